#include "curvx/curvature.hpp"

#include <algorithm>

namespace curvx {

namespace {

constexpr std::uint64_t kPruneSeeds[] = {0x5EED0001ULL, 0x5EED0002ULL, 0x5EED0003ULL};

// R^h_ijk for all indices, generic over the entry type. dgamma(h,i,j,k) = ∂_k Γ^h_ij.
template <class T>
Tensor<T> mixed_riemann(const Tensor<T>& gamma, const Tensor<T>& dgamma) {
  const int n = gamma.dim();
  Tensor<T> up(n, 4);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          Accumulator<T> acc;
          acc.add(dgamma({h, i, k, j}));
          acc.add_product(T(-1LL), dgamma({h, i, j, k}));
          for (int l = 0; l < n; ++l) {
            acc.add_product(gamma({h, j, l}), gamma({l, i, k}));
            acc.add_product(T(-1LL), gamma({h, k, l}), gamma({l, i, j}));
          }
          const T v = acc.result();
          up({h, i, j, k}) = v;
          up({h, i, k, j}) = T(-1LL) * v;
        }
  return up;
}

template <class T>
Tensor<T> lower_first(const Tensor<T>& up, const Tensor<T>& g) {
  const int n = up.dim();
  Tensor<T> out(n, up.rank());
  std::vector<int> src(static_cast<std::size_t>(up.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> idx = out.multi_index(flat);
    Accumulator<T> acc;
    src = idx;
    for (int m = 0; m < n; ++m) {
      src[0] = m;
      acc.add_product(g({idx[0], m}), up.at(src));
    }
    out[flat] = acc.result();
  }
  return out;
}

template <class T>
void subtract_connection_terms(Tensor<T>& out, const Tensor<T>& t, const Tensor<T>& gamma) {
  const int n = t.dim();
  const int k = t.rank();
  std::vector<int> src(static_cast<std::size_t>(k));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> idx = out.multi_index(flat);
    const int f = idx[static_cast<std::size_t>(k)];
    Accumulator<T> acc;
    acc.add(out[flat]);
    for (int s = 0; s < k; ++s) {
      std::copy(idx.begin(), idx.begin() + k, src.begin());
      const int as = idx[static_cast<std::size_t>(s)];
      for (int u = 0; u < n; ++u) {
        const T& gm = gamma({u, f, as});
        if (is_zero_entry(gm)) continue;
        src[static_cast<std::size_t>(s)] = u;
        acc.add_product(T(-1LL), gm, t.at(src));
      }
    }
    out[flat] = acc.result();
  }
}

}  // namespace

Tensor<Expr> christoffel(const MetricData& metric) {
  const Tensor<Expr>& g = metric.g;
  const Tensor<Expr>& gi = metric.g_inv;
  const int n = g.dim();
  Tensor<Expr> dg(n, 3);  // dg(i, j, k) = ∂_k g_ij
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Expr d = differentiate(g({i, j}), metric.coords[static_cast<std::size_t>(k)]);
        dg({i, j, k}) = d;
        dg({j, i, k}) = d;
      }
  Tensor<Expr> gamma(n, 3);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Accumulator<Expr> acc;
        for (int k = 0; k < n; ++k) {
          const Expr& ghk = gi({h, k});
          if (ghk.is_zero()) continue;
          const Expr bracket = add({dg({j, k, i}), dg({i, k, j}), -dg({i, j, k})});
          acc.add_product(Expr(Rational(1, 2)), ghk, bracket);
        }
        const Expr v = acc.result();
        gamma({h, i, j}) = v;
        gamma({h, j, i}) = v;
      }
  return gamma;
}

Tensor<Expr> riemann(const Tensor<Expr>& gamma, const MetricData& metric) {
  const int n = gamma.dim();
  Tensor<Expr> dgamma(n, 4);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Expr& G = gamma({h, i, j});
        for (int k = 0; k < n; ++k) {
          const Expr d = G.is_zero() ? Expr(0) : differentiate(G, metric.coords[static_cast<std::size_t>(k)]);
          dgamma({h, i, j, k}) = d;
          dgamma({h, j, i, k}) = d;
        }
      }
  return lower_first(mixed_riemann(gamma, dgamma), metric.g);
}

Tensor<Real> riemann_from_parts(const Tensor<Real>& gamma, const Tensor<Real>& dgamma, const Tensor<Real>& g) {
  return lower_first(mixed_riemann(gamma, dgamma), g);
}

Tensor<Expr> covariant_derivative(const Tensor<Expr>& t, const Tensor<Expr>& gamma,
                                  const std::vector<std::string>& coords) {
  const int n = t.dim();
  Tensor<Expr> out(n, t.rank() + 1);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const Expr& e = t[flat];
    if (e.is_zero()) continue;
    for (int f = 0; f < n; ++f) {
      out[flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(f)] =
          differentiate(e, coords[static_cast<std::size_t>(f)]);
    }
  }
  subtract_connection_terms(out, t, gamma);
  return out;
}

Tensor<Real> covariant_derivative_from_parts(const Tensor<Real>& t, const Tensor<Real>& dt, const Tensor<Real>& gamma) {
  if (dt.rank() != t.rank() + 1) throw ShapeError("derivative tensor must have one extra slot");
  Tensor<Real> out = dt;
  subtract_connection_terms(out, t, gamma);
  return out;
}

void prune_zeros(Tensor<Expr>& t, const SymbolRanges& ranges) {
  std::set<std::string> symbols;
  for (const auto& e : t.data()) {
    if (!e.is_zero() && !e.is_constant()) {
      for (const auto& s : free_symbols(e)) symbols.insert(s);
    }
  }
  std::vector<Evaluator> evaluators;
  for (std::uint64_t seed : kPruneSeeds) evaluators.emplace_back(sample_binding(symbols, ranges, seed));
  for (auto& e : t.data()) {
    if (e.is_zero() || e.is_constant()) continue;
    bool zero = true;
    bool fallback = false;
    for (auto& ev : evaluators) {
      try {
        const Real v = ev(e);
        if (std::fabs(v) > 1e-13L * ev.magnitude(e)) {
          zero = false;
          break;
        }
      } catch (const DomainError&) {
        fallback = true;
        break;
      }
    }
    if (fallback) zero = is_zero_probabilistic(e, ranges);
    if (zero) e = Expr(0);
  }
}

CurvatureBundle build_bundle(const MetricData& metric, const SymbolRanges& ranges) {
  CurvatureBundle b;
  b.metric = metric;
  b.gamma = christoffel(metric);
  prune_zeros(b.gamma, ranges);
  b.R = riemann(b.gamma, metric);
  prune_zeros(b.R, ranges);

  auto ricci = ricci_family(b.R, metric.g_inv);
  b.S = std::move(ricci.S);
  prune_zeros(b.S, ranges);
  b.kappa = is_zero_probabilistic(ricci.kappa, ranges) ? Expr(0) : ricci.kappa;
  b.J = std::move(ricci.J);
  prune_zeros(b.J, ranges);
  b.S2 = std::move(ricci.S2);
  prune_zeros(b.S2, ranges);

  auto derived = derived_curvatures(b.R, b.S, b.kappa, metric.g);
  b.C = std::move(derived.C);
  b.P = std::move(derived.P);
  b.W = std::move(derived.W);
  b.K = std::move(derived.K);
  for (auto* t : {&b.C, &b.P, &b.W, &b.K}) prune_zeros(*t, ranges);

  b.nablaR = covariant_derivative(b.R, b.gamma, metric.coords);
  prune_zeros(b.nablaR, ranges);
  b.nablaC = covariant_derivative(b.C, b.gamma, metric.coords);
  prune_zeros(b.nablaC, ranges);
  b.nablaS = covariant_derivative(b.S, b.gamma, metric.coords);
  prune_zeros(b.nablaS, ranges);

  b.T = stress_energy(b.S, b.kappa, metric.g, Expr::symbol(kLambdaSymbol));
  SymbolRanges with_lambda = ranges;
  with_lambda.set(kLambdaSymbol, -1.0L, 1.0L);
  prune_zeros(b.T, with_lambda);
  return b;
}

std::vector<std::string> bundle_tensor_names() {
  return {"g", "ginv", "Gamma", "R", "S", "kappa", "J", "S2", "C", "P", "W", "K", "nablaR", "nablaC", "nablaS", "T"};
}

bool bundle_tensor(const CurvatureBundle& b, std::string_view name, Tensor<Expr>& out) {
  if (name == "g") out = b.metric.g;
  else if (name == "ginv") out = b.metric.g_inv;
  else if (name == "Gamma") out = b.gamma;
  else if (name == "R") out = b.R;
  else if (name == "S") out = b.S;
  else if (name == "kappa") {
    out = Tensor<Expr>(b.R.dim(), 0);
    out[0] = b.kappa;
  } else if (name == "J") out = b.J;
  else if (name == "S2") out = b.S2;
  else if (name == "C") out = b.C;
  else if (name == "P") out = b.P;
  else if (name == "W") out = b.W;
  else if (name == "K") out = b.K;
  else if (name == "nablaR") out = b.nablaR;
  else if (name == "nablaC") out = b.nablaC;
  else if (name == "nablaS") out = b.nablaS;
  else if (name == "T") out = b.T;
  else return false;
  return true;
}

}  // namespace curvx
