#include "curvx/tensor.hpp"

#include <algorithm>
#include <map>

namespace curvx {

std::string_view symmetry_name(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Riemann: return "riemann";
  }
  return "?";
}

Tensor<Real> evaluate(const Tensor<Expr>& t, Evaluator& ev) {
  Tensor<Real> out(t.dim(), t.rank());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i].is_zero()) out[i] = ev(t[i]);
  }
  return out;
}

Real max_abs(const Tensor<Real>& t) {
  Real m = 0.0L;
  for (Real v : t.data()) m = std::max(m, std::fabs(v));
  return m;
}

Real symmetry_violation(const Tensor<Real>& t, Symmetry s) {
  const int n = t.dim();
  Real worst = 0.0L;
  auto track = [&](Real v) { worst = std::max(worst, std::fabs(v)); };
  switch (s) {
    case Symmetry::None: return 0.0L;
    case Symmetry::Symmetric:
      if (t.rank() != 2) throw ShapeError("symmetric descriptor needs a (0,2) tensor");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) track(t({i, j}) - t({j, i}));
      return worst;
    case Symmetry::Riemann:
      if (t.rank() != 4) throw ShapeError("riemann descriptor needs a (0,4) tensor");
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const Real v = t({a, b, c, d});
              track(v + t({b, a, c, d}));
              track(v + t({a, b, d, c}));
              track(v - t({c, d, a, b}));
              track(v + t({a, c, d, b}) + t({a, d, b, c}));
            }
      return worst;
  }
  return worst;
}

namespace {

// Determinant of the minor on `rows` x `cols` (bitmasks), expanded along the
// first remaining row, memoised by column mask.
Expr minor_det(const Tensor<Expr>& m, int row, unsigned cols, std::map<unsigned, Expr>& memo) {
  const int n = m.dim();
  if (row == n) return Expr(1);
  if (auto it = memo.find(cols); it != memo.end()) return it->second;
  std::vector<Expr> terms;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    if ((cols & (1U << static_cast<unsigned>(c))) == 0) continue;
    const Expr& a = m({row, c});
    if (!a.is_zero()) {
      const Expr sub = minor_det(m, row + 1, cols & ~(1U << static_cast<unsigned>(c)), memo);
      if (!sub.is_zero()) terms.push_back(mul({Expr(sign), a, sub}));
    }
    sign = -sign;
  }
  Expr out = add(std::move(terms));
  memo.emplace(cols, out);
  return out;
}

Expr cofactor(const Tensor<Expr>& m, int i, int j) {
  const int n = m.dim();
  Tensor<Expr> sub(n - 1, 2);
  for (int r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == j) continue;
      sub({rr, cc}) = m({r, c});
      ++cc;
    }
    ++rr;
  }
  const Expr d = determinant(sub);
  return (i + j) % 2 == 0 ? d : -d;
}

}  // namespace

Expr determinant(const Tensor<Expr>& m) {
  if (m.rank() != 2) throw ShapeError("determinant needs a square matrix");
  if (m.dim() == 0) return Expr(1);
  std::map<unsigned, Expr> memo;
  return minor_det(m, 0, (1U << static_cast<unsigned>(m.dim())) - 1U, memo);
}

MetricData invert_metric(const Tensor<Expr>& g, std::vector<std::string> coords, const SymbolRanges& ranges) {
  if (g.rank() != 2) throw ShapeError("metric must be a (0,2) tensor");
  const int n = g.dim();
  if (static_cast<int>(coords.size()) != n) throw ShapeError("coordinate count does not match the metric dimension");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!identical(g({i, j}), g({j, i}))) throw ShapeError("metric is not symmetric");
    }
  MetricData md;
  md.coords = std::move(coords);
  md.g = g;
  md.det = determinant(g);
  if (is_zero_probabilistic(md.det, ranges)) throw SingularMetricError("metric determinant vanishes identically");
  const Expr inv_det = pow(md.det, Rational(-1));
  md.g_inv = Tensor<Expr>(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Expr c = cofactor(g, j, i);
      const Expr v = c.is_zero() ? Expr(0) : c * inv_det;
      md.g_inv({i, j}) = v;
      md.g_inv({j, i}) = v;
    }
  return md;
}

}  // namespace curvx
