#include <functional>
#include <unordered_map>

#include "curvx/expr.hpp"
#include "node.hpp"

namespace curvx {

Expr differentiate(const Expr& f, std::string_view var) {
  std::unordered_map<const detail::Node*, Expr> memo;
  std::function<Expr(const Expr&)> d = [&](const Expr& e) -> Expr {
    switch (e.kind()) {
      case Kind::Constant: return Expr(0);
      case Kind::Symbol: return Expr(e.name() == var ? 1 : 0);
      default: break;
    }
    if (auto it = memo.find(e.id()); it != memo.end()) return it->second;
    Expr out;
    const auto& a = e.args();
    switch (e.kind()) {
      case Kind::Sum: {
        std::vector<Expr> terms;
        terms.reserve(a.size());
        for (const auto& t : a) terms.push_back(d(t));
        out = add(std::move(terms));
        break;
      }
      case Kind::Product: {
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < a.size(); ++i) {
          Expr di = d(a[i]);
          if (di.is_zero()) continue;
          std::vector<Expr> factors(a.begin(), a.end());
          factors[i] = di;
          terms.push_back(mul(std::move(factors)));
        }
        out = add(std::move(terms));
        break;
      }
      case Kind::Power: {
        const Expr& base = a.front();
        const Expr db = d(base);
        if (!db.is_zero()) {
          const Rational& q = e.rational();
          out = mul({Expr(q), pow(base, q - 1), db});
        }
        break;
      }
      case Kind::Function: {
        const Expr& u = a.front();
        const Expr du = d(u);
        if (du.is_zero()) break;
        switch (e.func()) {
          case Func::Sin: out = cos(u) * du; break;
          case Func::Cos: out = -sin(u) * du; break;
          case Func::Tan: out = (Expr(1) + pow(tan(u), Rational(2))) * du; break;
          case Func::Cot: out = -(Expr(1) + pow(cot(u), Rational(2))) * du; break;
          case Func::Exp: out = e * du; break;
          case Func::Log: out = du / u; break;
          case Func::Abs: out = mul({u, pow(abs(u), Rational(-1)), du}); break;
        }
        break;
      }
      default: break;
    }
    memo.emplace(e.id(), out);
    return out;
  };
  return d(f);
}

}  // namespace curvx
