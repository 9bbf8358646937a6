#include <cmath>
#include <numbers>
#include <random>

#include "curvx/expr.hpp"
#include "node.hpp"

namespace curvx {

namespace {

std::string excerpt(const Expr& e) {
  std::string s = to_string(e);
  if (s.size() > 200) s = s.substr(0, 197) + "...";
  return s;
}

Real integer_power(Real v, long long n) {
  if (n < 0) return 1.0L / integer_power(v, -n);
  Real result = 1.0L;
  Real b = v;
  while (n != 0) {
    if ((n & 1LL) != 0) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

}  // namespace

Real Binding::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw UnboundSymbolError(name);
  return it->second;
}

Real Evaluator::operator()(const Expr& e) { return eval(e); }

Real Evaluator::eval(const Expr& e) {
  if (e.kind() == Kind::Symbol) return binding_.at(e.name());
  if (auto it = cache_.find(e.id()); it != cache_.end()) return it->second;
  Real v = 0.0L;
  const auto& a = e.args();
  switch (e.kind()) {
    case Kind::Constant: v = e.rational().convert_to<Real>(); break;
    case Kind::Symbol: break;
    case Kind::Sum:
      for (const auto& t : a) v += eval(t);
      break;
    case Kind::Product:
      v = 1.0L;
      for (const auto& f : a) v *= eval(f);
      break;
    case Kind::Power: {
      namespace mp = boost::multiprecision;
      const Real b = eval(a.front());
      const Rational& q = e.rational();
      if (b == 0.0L) {
        if (q < 0) throw DomainError(excerpt(e), b, "division by zero");
        v = 0.0L;
      } else if (is_integer(q)) {
        v = integer_power(b, mp::numerator(q).convert_to<long long>());
      } else {
        const mp::cpp_int p = mp::numerator(q);
        const mp::cpp_int m = mp::denominator(q);
        Real magnitude_root = 0.0L;
        const Real ab = std::fabs(b);
        if (m == 2) {
          magnitude_root = integer_power(std::sqrt(ab), p.convert_to<long long>());
        } else {
          magnitude_root = std::pow(ab, q.convert_to<Real>());
        }
        if (b < 0.0L) {
          if (m % 2 == 0) throw DomainError(excerpt(e), b, "even root of a negative value");
          v = (p % 2 == 0) ? magnitude_root : -magnitude_root;
        } else {
          v = magnitude_root;
        }
      }
      break;
    }
    case Kind::Function: {
      const Real x = eval(a.front());
      switch (e.func()) {
        case Func::Sin: v = std::sin(x); break;
        case Func::Cos: v = std::cos(x); break;
        case Func::Tan: {
          const Real c = std::cos(x);
          if (std::fabs(c) < 1e-300L) throw DomainError(excerpt(e), x, "pole of tan");
          v = std::sin(x) / c;
          break;
        }
        case Func::Cot: {
          const Real s = std::sin(x);
          if (std::fabs(s) < 1e-300L) throw DomainError(excerpt(e), x, "pole of cot");
          v = std::cos(x) / s;
          break;
        }
        case Func::Exp: v = std::exp(x); break;
        case Func::Log:
          if (x <= 0.0L) throw DomainError(excerpt(e), x, "log of a non-positive value");
          v = std::log(x);
          break;
        case Func::Abs: v = std::fabs(x); break;
      }
      break;
    }
  }
  if (!std::isfinite(v)) throw DomainError(excerpt(e), v, "non-finite value");
  cache_.emplace(e.id(), v);
  return v;
}

Real Evaluator::magnitude(const Expr& e) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Symbol: return std::fabs(eval(e));
    default: break;
  }
  if (auto it = magnitude_cache_.find(e.id()); it != magnitude_cache_.end()) return it->second;
  Real m = 0.0L;
  const auto& a = e.args();
  switch (e.kind()) {
    case Kind::Sum:
      for (const auto& t : a) m += magnitude(t);
      break;
    case Kind::Product:
      m = 1.0L;
      for (const auto& f : a) m *= magnitude(f);
      break;
    case Kind::Power:
      if (e.rational() > 0) {
        m = std::pow(magnitude(a.front()), e.rational().convert_to<Real>());
      } else {
        m = std::fabs(eval(e));
      }
      break;
    default: m = std::fabs(eval(e)); break;
  }
  magnitude_cache_.emplace(e.id(), m);
  return m;
}

Real evaluate(const Expr& e, const Binding& b) {
  Evaluator ev(b);
  return ev(e);
}

// ---------------------------------------------------------------------------
// Probabilistic identity testing

std::pair<Real, Real> SymbolRanges::at(const std::string& name) const {
  if (auto it = ranges_.find(name); it != ranges_.end()) return it->second;
  if (name == "th" || name.rfind("theta", 0) == 0) return {0.05L, std::numbers::pi_v<Real> - 0.05L};
  return {1.0L, 3.0L};
}

Binding sample_binding(const std::set<std::string>& symbols, const SymbolRanges& ranges, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Binding b;
  for (const auto& s : symbols) {
    const auto [lo, hi] = ranges.at(s);
    const Real u = static_cast<Real>(gen() >> 11U) * 0x1.0p-53L;
    b.set(s, lo + u * (hi - lo));
  }
  return b;
}

namespace {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

}  // namespace

bool equal_probabilistic(const Expr& f, const Expr& g, int trials, std::uint64_t seed, const SymbolRanges& ranges) {
  if (identical(f, g)) return true;
  std::set<std::string> symbols = free_symbols(f);
  for (const auto& s : free_symbols(g)) symbols.insert(s);
  const int cap = 20 * trials + 20;
  int passed = 0;
  for (int attempt = 0; passed < trials; ++attempt) {
    const Binding b = sample_binding(symbols, ranges, seed + static_cast<std::uint64_t>(attempt) * kSeedStride);
    try {
      Evaluator ev(b);
      const Real vf = ev(f);
      const Real vg = ev(g);
      if (std::fabs(vf - vg) > 1e-10L * (1.0L + std::fabs(vf) + std::fabs(vg))) return false;
      ++passed;
    } catch (const DomainError&) {
      if (attempt + 1 >= cap) throw;
    }
  }
  return true;
}

bool is_zero_probabilistic(const Expr& f, const SymbolRanges& ranges, std::uint64_t seed, int trials) {
  if (f.is_zero()) return true;
  if (f.is_constant()) return false;
  const std::set<std::string> symbols = free_symbols(f);
  const int cap = 20 * trials + 20;
  int passed = 0;
  for (int attempt = 0; passed < trials; ++attempt) {
    if (attempt >= cap) return false;
    const Binding b = sample_binding(symbols, ranges, seed + static_cast<std::uint64_t>(attempt) * kSeedStride);
    try {
      Evaluator ev(b);
      const Real v = ev(f);
      const Real m = ev.magnitude(f);
      if (std::fabs(v) > 1e-13L * m) return false;
      ++passed;
    } catch (const DomainError&) {
    }
  }
  return true;
}

}  // namespace curvx
