#pragma once

#include <string>
#include <vector>

#include "curvx/tensor.hpp"

namespace curvx {

/// Name of the cosmological constant symbol in T.
inline constexpr const char* kLambdaSymbol = "Lambda";

/// Γ(h, i, j) = Γ^h_ij = ½ g^{hk}(∂_i g_jk + ∂_j g_ik − ∂_k g_ij).
[[nodiscard]] Tensor<Expr> christoffel(const MetricData& metric);

/// R_hijk = g_hm R^m_ijk with
/// R^h_ijk = ∂_j Γ^h_ik − ∂_k Γ^h_ij + Γ^h_jl Γ^l_ik − Γ^h_kl Γ^l_ij.
[[nodiscard]] Tensor<Expr> riemann(const Tensor<Expr>& gamma, const MetricData& metric);

/// Same contraction from numeric Γ, ∂Γ (dgamma(h,i,j,k) = ∂_k Γ^h_ij) and g.
[[nodiscard]] Tensor<Real> riemann_from_parts(const Tensor<Real>& gamma, const Tensor<Real>& dgamma,
                                              const Tensor<Real>& g);

template <class T>
struct RicciFamily {
  Tensor<T> S;   // S_ij = g^{hk} R_hijk
  T kappa;       // g^{ij} S_ij
  Tensor<T> J;   // J(a, b) = 𝒥^a_b = g^{av} S_vb
  Tensor<T> S2;  // S_ik g^{kl} S_lj
};

template <class T>
[[nodiscard]] RicciFamily<T> ricci_family(const Tensor<T>& R, const Tensor<T>& g_inv) {
  const int n = R.dim();
  RicciFamily<T> out;
  out.S = metric_trace(R, g_inv, 0, 3);
  Accumulator<T> k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k.add_product(g_inv({i, j}), out.S({i, j}));
  out.kappa = k.result();
  out.J = Tensor<T>(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Accumulator<T> acc;
      for (int v = 0; v < n; ++v) acc.add_product(g_inv({a, v}), out.S({v, b}));
      out.J({a, b}) = acc.result();
    }
  out.S2 = Tensor<T>(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Accumulator<T> acc;
      for (int k2 = 0; k2 < n; ++k2) acc.add_product(out.S({i, k2}), out.J({k2, j}));
      out.S2({i, j}) = acc.result();
    }
  return out;
}

template <class T>
struct DerivedCurvatures {
  Tensor<T> C;  // conformal
  Tensor<T> P;  // projective
  Tensor<T> W;  // concircular
  Tensor<T> K;  // conharmonic
};

template <class T>
[[nodiscard]] DerivedCurvatures<T> derived_curvatures(const Tensor<T>& R, const Tensor<T>& S, const T& kappa,
                                                      const Tensor<T>& g) {
  const int n = R.dim();
  if (n < 3) throw ShapeError("derived curvatures need dimension >= 3");
  const T nn(static_cast<long long>(n));
  const T one(1LL);
  const Tensor<T> gS = kulkarni_nomizu(g, S);
  const Tensor<T> gg = kulkarni_nomizu(g, g);
  DerivedCurvatures<T> out;
  out.K = R - (one / (nn - T(2LL))) * gS;
  out.C = out.K + (kappa / (T(2LL) * (nn - one) * (nn - T(2LL)))) * gg;
  out.W = R - (kappa / (T(2LL) * nn * (nn - one))) * gg;
  out.P = Tensor<T>(n, 4);
  const T inv = one / (nn - one);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Accumulator<T> acc;
          acc.add(R({a, b, c, d}));
          acc.add_product(T(-1LL) * inv, g({a, d}), S({b, c}));
          acc.add_product(inv, g({b, d}), S({a, c}));
          out.P({a, b, c, d}) = acc.result();
        }
  return out;
}

/// T = S − (κ/2) g + Λ g.
template <class T>
[[nodiscard]] Tensor<T> stress_energy(const Tensor<T>& S, const T& kappa, const Tensor<T>& g, const T& lambda) {
  const T coeff = lambda - kappa / T(2LL);
  return S + coeff * g;
}

/// ∇_f T_{a1..ak} = ∂_f T_{a1..ak} − Σ_i Γ^u_{f a_i} T_{..u..}, derivative slot last.
[[nodiscard]] Tensor<Expr> covariant_derivative(const Tensor<Expr>& t, const Tensor<Expr>& gamma,
                                                const std::vector<std::string>& coords);

/// Numeric counterpart given ∂T (dt(.., f) = ∂_f T_..) and Γ.
[[nodiscard]] Tensor<Real> covariant_derivative_from_parts(const Tensor<Real>& t, const Tensor<Real>& dt,
                                                           const Tensor<Real>& gamma);

struct CurvatureBundle {
  MetricData metric;
  Tensor<Expr> gamma;
  Tensor<Expr> R;
  Tensor<Expr> S;
  Expr kappa;
  Tensor<Expr> J;
  Tensor<Expr> S2;
  Tensor<Expr> C;
  Tensor<Expr> P;
  Tensor<Expr> W;
  Tensor<Expr> K;
  Tensor<Expr> nablaR;
  Tensor<Expr> nablaC;
  Tensor<Expr> nablaS;
  /// Stress-energy with a free symbol `Lambda`.
  Tensor<Expr> T;
};

/// Runs the whole pipeline. Entries that vanish identically (probabilistic
/// test over `ranges`) are replaced by exact zeros after every stage.
[[nodiscard]] CurvatureBundle build_bundle(const MetricData& metric, const SymbolRanges& ranges);

/// Replaces probabilistically-zero entries with exact zeros.
void prune_zeros(Tensor<Expr>& t, const SymbolRanges& ranges);

/// Looks up a bundle tensor by name: g, ginv, Gamma, R, S, kappa, J, S2, C,
/// P, W, K, nablaR, nablaC, nablaS, T. Returns false for unknown names.
[[nodiscard]] bool bundle_tensor(const CurvatureBundle& b, std::string_view name, Tensor<Expr>& out);
[[nodiscard]] std::vector<std::string> bundle_tensor_names();

}  // namespace curvx
