#include "curvx/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "node.hpp"

namespace curvx {

namespace mp = boost::multiprecision;

namespace {

constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6U) + (h >> 2U);
  h ^= h >> 31U;
  h *= 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 27U;
  return h;
}

std::uint64_t hash_string(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

const Expr& zero_expr() {
  static const Expr z = Builder::constant(Rational(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = Builder::constant(Rational(1));
  return o;
}

// Splits a term into (coefficient, rest). rest is 1 for constants.
std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.kind() == Kind::Constant) return {term.rational(), one_expr()};
  if (term.kind() == Kind::Product) {
    const auto& a = term.args();
    if (a.front().kind() == Kind::Constant) {
      if (a.size() == 2) return {a.front().rational(), a[1]};
      return {a.front().rational(), Builder::raw_product(std::vector<Expr>(a.begin() + 1, a.end()))};
    }
  }
  return {Rational(1), term};
}

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (c == 0) return zero_expr();
  if (rest.is_one()) return Builder::constant(c);
  if (c == 1) return rest;
  std::vector<Expr> children;
  children.push_back(Builder::constant(c));
  if (rest.kind() == Kind::Product) {
    children.insert(children.end(), rest.args().begin(), rest.args().end());
  } else {
    children.push_back(rest);
  }
  return Builder::raw_product(std::move(children));
}

// Splits a factor into (base, exponent).
std::pair<Expr, Rational> split_power(const Expr& f) {
  if (f.kind() == Kind::Power) return {f.args().front(), f.rational()};
  return {f, Rational(1)};
}

mp::cpp_int gcd_int(mp::cpp_int a, mp::cpp_int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    mp::cpp_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Rational content of a sum (gcd of numerators / lcm of denominators),
// signed by the coefficient of its leading term.
Rational sum_content(const Expr& s) {
  mp::cpp_int num = 0;
  mp::cpp_int den = 1;
  for (const auto& t : s.args()) {
    const Rational c = split_coefficient(t).first;
    num = gcd_int(num, mp::numerator(c));
    const mp::cpp_int d = mp::denominator(c);
    den = den / gcd_int(den, d) * d;
  }
  Rational content(num, den);
  if (split_coefficient(s.args().front()).first < 0) content = -content;
  return content;
}

Expr scale_sum(const Expr& s, const Rational& factor) {
  std::vector<Expr> terms;
  terms.reserve(s.args().size());
  for (const auto& t : s.args()) {
    auto [c, rest] = split_coefficient(t);
    terms.push_back(with_coefficient(c * factor, rest));
  }
  return Builder::raw_sum(std::move(terms));
}

bool exact_root(const mp::cpp_int& value, unsigned k, mp::cpp_int& out) {
  if (value < 0) return false;
  if (value == 0) {
    out = 0;
    return true;
  }
  const long double approx = std::pow(value.convert_to<long double>(), 1.0L / static_cast<long double>(k));
  if (!std::isfinite(approx) || approx > 1e17L) return false;
  const auto guess = static_cast<long long>(std::llround(approx));
  for (long long cand = std::max(0LL, guess - 2); cand <= guess + 2; ++cand) {
    mp::cpp_int p = 1;
    for (unsigned i = 0; i < k; ++i) p *= cand;
    if (p == value) {
      out = cand;
      return true;
    }
  }
  return false;
}

Rational rational_ipow(const Rational& base, long long n) {
  Rational result(1);
  Rational b = n < 0 ? Rational(1) / base : base;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  while (e != 0) {
    if ((e & 1ULL) != 0) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

Expr pow_constant(const Rational& v, const Rational& q) {
  if (v == 0) {
    if (q > 0) return zero_expr();
    throw DomainError("0", 0.0L, "division by zero");
  }
  if (is_integer(q)) return Builder::constant(rational_ipow(v, mp::numerator(q).convert_to<long long>()));
  const mp::cpp_int p = mp::numerator(q);
  const mp::cpp_int m = mp::denominator(q);
  if (m > 64) return Builder::raw_power(Builder::constant(v), q);
  const auto k = m.convert_to<unsigned>();
  const bool negative = v < 0;
  if (negative && k % 2 == 0) return Builder::raw_power(Builder::constant(v), q);
  const Rational a = negative ? -v : v;
  mp::cpp_int rn;
  mp::cpp_int rd;
  if (exact_root(mp::numerator(a), k, rn) && exact_root(mp::denominator(a), k, rd)) {
    Rational root(rn, rd);
    if (negative) root = -root;
    return Builder::constant(rational_ipow(root, p.convert_to<long long>()));
  }
  // Keep the fractional part of the exponent in (0, 1).
  mp::cpp_int whole = p / m;
  if (p < 0 && whole * m != p) whole -= 1;
  const Rational frac = q - Rational(whole);
  if (whole == 0) return Builder::raw_power(Builder::constant(v), q);
  return mul({Builder::constant(rational_ipow(v, whole.convert_to<long long>())),
              Builder::raw_power(Builder::constant(v), frac)});
}

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

std::uint64_t hash_rational(const Rational& q) {
  const mp::cpp_int& n = mp::numerator(q);
  const mp::cpp_int& d = mp::denominator(q);
  constexpr long long lim = std::numeric_limits<long long>::max();
  if (n < lim && n > -lim && d < lim) {
    return mix(static_cast<std::uint64_t>(n.convert_to<long long>()), static_cast<std::uint64_t>(d.convert_to<long long>()));
  }
  return hash_string(q.str());
}

std::string_view func_name(Func f) noexcept {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Cot: return "cot";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Abs: return "abs";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Builder

Expr Builder::make(detail::Node node) {
  std::uint64_t h = mix(0x1234, static_cast<std::uint64_t>(node.kind));
  switch (node.kind) {
    case Kind::Constant: h = mix(h, hash_rational(node.value)); break;
    case Kind::Symbol: h = mix(h, hash_string(node.name)); break;
    case Kind::Power: h = mix(mix(h, node.args[0].hash()), hash_rational(node.value)); break;
    case Kind::Function: h = mix(mix(h, static_cast<std::uint64_t>(node.func)), node.args[0].hash()); break;
    case Kind::Product:
    case Kind::Sum:
      for (const auto& a : node.args) h = mix(h, a.hash());
      break;
  }
  node.hash = h;
  return Expr(std::make_shared<const detail::Node>(std::move(node)));
}

Expr Builder::constant(const Rational& v) {
  detail::Node n;
  n.kind = Kind::Constant;
  n.value = v;
  return make(std::move(n));
}

Expr Builder::raw_power(const Expr& base, const Rational& exponent) {
  detail::Node n;
  n.kind = Kind::Power;
  n.value = exponent;
  n.args = {base};
  return make(std::move(n));
}

Expr Builder::raw_function(Func f, const Expr& arg) {
  detail::Node n;
  n.kind = Kind::Function;
  n.func = f;
  n.args = {arg};
  return make(std::move(n));
}

Expr Builder::raw_product(std::vector<Expr> children) {
  detail::Node n;
  n.kind = Kind::Product;
  n.args = std::move(children);
  return make(std::move(n));
}

Expr Builder::raw_sum(std::vector<Expr> children) {
  detail::Node n;
  n.kind = Kind::Sum;
  n.args = std::move(children);
  return make(std::move(n));
}

// ---------------------------------------------------------------------------
// Expr accessors

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long long value) : Expr(Builder::constant(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(Builder::constant(value)) {}

Expr Expr::symbol(std::string name) {
  detail::Node n;
  n.kind = Kind::Symbol;
  n.name = std::move(name);
  return Builder::make(std::move(n));
}

Kind Expr::kind() const noexcept { return node_->kind; }
bool Expr::is_zero() const noexcept { return node_->kind == Kind::Constant && node_->value == 0; }
bool Expr::is_one() const noexcept { return node_->kind == Kind::Constant && node_->value == 1; }

const Rational& Expr::rational() const {
  if (node_->kind != Kind::Constant && node_->kind != Kind::Power) throw Error("rational() on non-constant node");
  return node_->value;
}

const std::string& Expr::name() const {
  if (node_->kind != Kind::Symbol) throw Error("name() on non-symbol node");
  return node_->name;
}

Func Expr::func() const {
  if (node_->kind != Kind::Function) throw Error("func() on non-function node");
  return node_->func;
}

const std::vector<Expr>& Expr::args() const { return node_->args; }
std::uint64_t Expr::hash() const noexcept { return node_->hash; }

std::size_t Expr::tree_size() const {
  std::size_t n = 1;
  for (const auto& a : node_->args) n += a.tree_size();
  return n;
}

// ---------------------------------------------------------------------------
// Ordering

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant:
      if (a.rational() == b.rational()) return 0;
      return a.rational() < b.rational() ? -1 : 1;
    case Kind::Symbol: {
      const int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    default: break;
  }
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  // Equal hashes: settle structurally.
  if (a.kind() == Kind::Power && a.rational() != b.rational()) return a.rational() < b.rational() ? -1 : 1;
  if (a.kind() == Kind::Function && a.func() != b.func()) return a.func() < b.func() ? -1 : 1;
  const auto& x = a.args();
  const auto& y = b.args();
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int c = compare(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool identical(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Canonical constructors

Expr add(std::vector<Expr> terms) {
  Rational constant(0);
  std::map<Expr, Rational, ExprLess> collected;
  std::function<void(const Expr&)> absorb = [&](const Expr& t) {
    switch (t.kind()) {
      case Kind::Constant: constant += t.rational(); return;
      case Kind::Sum:
        for (const auto& c : t.args()) absorb(c);
        return;
      default: {
        auto [c, rest] = split_coefficient(t);
        collected[rest] += c;
      }
    }
  };
  for (const auto& t : terms) absorb(t);

  std::vector<Expr> out;
  out.reserve(collected.size() + 1);
  if (constant != 0) out.push_back(Builder::constant(constant));
  for (const auto& [rest, c] : collected) {
    if (c != 0) out.push_back(with_coefficient(c, rest));
  }
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  return Builder::raw_sum(std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  Rational coeff(1);
  std::map<Expr, Rational, ExprLess> powers;
  bool is_zero = false;
  std::function<void(const Expr&)> absorb = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Constant:
        coeff *= f.rational();
        if (coeff == 0) is_zero = true;
        return;
      case Kind::Product:
        for (const auto& c : f.args()) absorb(c);
        return;
      case Kind::Sum: {
        const Rational content = sum_content(f);
        coeff *= content;
        powers[content == 1 ? f : scale_sum(f, Rational(1) / content)] += 1;
        return;
      }
      default: {
        auto [base, e] = split_power(f);
        powers[base] += e;
      }
    }
  };
  for (const auto& f : factors) {
    absorb(f);
    if (is_zero) return zero_expr();
  }

  std::vector<Expr> out;
  bool needs_merge = false;
  for (const auto& [base, e] : powers) {
    if (e == 0) continue;
    Expr p = pow(base, e);
    if (p.kind() == Kind::Constant || p.kind() == Kind::Product) needs_merge = true;
    out.push_back(std::move(p));
  }
  if (needs_merge) {
    out.push_back(Builder::constant(coeff));
    return mul(std::move(out));
  }
  if (out.empty()) return Builder::constant(coeff);
  if (out.size() == 1) {
    if (coeff == 1) return out.front();
    if (out.front().kind() == Kind::Sum) return scale_sum(out.front(), coeff);
  }
  std::vector<Expr> children;
  children.reserve(out.size() + 1);
  if (coeff != 1) children.push_back(Builder::constant(coeff));
  // `powers` iterates in base order; keep that order for the factors.
  children.insert(children.end(), out.begin(), out.end());
  return Builder::raw_product(std::move(children));
}

Expr pow(const Expr& base, const Rational& exponent) {
  if (exponent == 0) return one_expr();
  if (exponent == 1) return base;
  switch (base.kind()) {
    case Kind::Constant: return pow_constant(base.rational(), exponent);
    case Kind::Power: {
      const Rational& inner = base.rational();
      if (is_integer(exponent) || mp::numerator(inner) % 2 != 0) return pow(base.args().front(), inner * exponent);
      return Builder::raw_power(base, exponent);
    }
    case Kind::Product: {
      if (is_integer(exponent)) {
        std::vector<Expr> parts;
        parts.reserve(base.args().size());
        for (const auto& f : base.args()) parts.push_back(pow(f, exponent));
        return mul(std::move(parts));
      }
      auto [c, rest] = split_coefficient(base);
      if (c != 1 && c > 0) return mul({pow_constant(c, exponent), pow(rest, exponent)});
      return Builder::raw_power(base, exponent);
    }
    case Kind::Sum: {
      Rational content = sum_content(base);
      if (!is_integer(exponent) && content < 0) content = -content;
      if (content != 1) return mul({pow_constant(content, exponent), pow(scale_sum(base, Rational(1) / content), exponent)});
      return Builder::raw_power(base, exponent);
    }
    default: return Builder::raw_power(base, exponent);
  }
}

Expr apply(Func f, const Expr& arg) {
  if (arg.kind() == Kind::Constant) {
    const Rational& v = arg.rational();
    if (v == 0) {
      switch (f) {
        case Func::Sin:
        case Func::Tan:
        case Func::Abs: return zero_expr();
        case Func::Cos:
        case Func::Exp: return one_expr();
        default: break;
      }
    }
    if (f == Func::Log && v == 1) return zero_expr();
    if (f == Func::Abs) return Builder::constant(v < 0 ? Rational(-v) : v);
  }
  return Builder::raw_function(f, arg);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add({a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return add({a, mul({Expr(-1), b})});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return zero_expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return mul({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError(to_string(a) + "/0", 0.0L, "division by zero");
  if (a.is_zero()) return zero_expr();
  return mul({a, pow(b, Rational(-1))});
}

Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }

// ---------------------------------------------------------------------------
// Structural transforms

namespace {

Expr rebuild(const Expr& e, const std::vector<Expr>& args) {
  switch (e.kind()) {
    case Kind::Constant:
    case Kind::Symbol: return e;
    case Kind::Sum: return add(args);
    case Kind::Product: return mul(args);
    case Kind::Power: return pow(args.front(), e.rational());
    case Kind::Function: return apply(e.func(), args.front());
  }
  return e;
}

template <class Leaf>
Expr transform(const Expr& e, std::unordered_map<const detail::Node*, Expr>& memo, const Leaf& leaf) {
  if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
  Expr out;
  if (e.kind() == Kind::Symbol || e.kind() == Kind::Constant) {
    out = leaf(e);
  } else {
    std::vector<Expr> args;
    args.reserve(e.args().size());
    for (const auto& a : e.args()) args.push_back(transform(a, memo, leaf));
    out = rebuild(e, args);
  }
  memo.emplace(e.id(), out);
  return out;
}

}  // namespace

Expr simplify(const Expr& e) {
  std::unordered_map<const detail::Node*, Expr> memo;
  return transform(e, memo, [](const Expr& x) { return x; });
}

Expr substitute(const Expr& f, std::string_view name, const Expr& value) {
  std::unordered_map<const detail::Node*, Expr> memo;
  return transform(f, memo, [&](const Expr& x) {
    if (x.kind() == Kind::Symbol && x.name() == name) return value;
    return x;
  });
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  std::set<const detail::Node*> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (!seen.insert(x.id()).second) return;
    if (x.kind() == Kind::Symbol) out.insert(x.name());
    for (const auto& a : x.args()) walk(a);
  };
  walk(e);
  return out;
}

bool depends_on(const Expr& e, std::string_view var) {
  std::unordered_map<const detail::Node*, bool> memo;
  std::function<bool(const Expr&)> walk = [&](const Expr& x) -> bool {
    if (x.kind() == Kind::Symbol) return x.name() == var;
    if (x.kind() == Kind::Constant) return false;
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    bool found = false;
    for (const auto& a : x.args()) {
      if (walk(a)) {
        found = true;
        break;
      }
    }
    memo.emplace(x.id(), found);
    return found;
  };
  return walk(e);
}

}  // namespace curvx
