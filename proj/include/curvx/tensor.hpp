#pragma once

// Dense covariant component tensors and the algebraic products built on
// them. Everything here is templated over the entry type so the same code
// runs symbolically (Expr) and numerically (Real).

#include <cmath>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "curvx/expr.hpp"

namespace curvx {

enum class Symmetry { None, Symmetric, Riemann };

[[nodiscard]] std::string_view symmetry_name(Symmetry s) noexcept;

template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank) : dim_(dim), rank_(rank), data_(count(dim, rank), T{}) {}

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  [[nodiscard]] std::size_t offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank_) throw ShapeError("index rank mismatch");
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw ShapeError("index out of range");
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
  }

  [[nodiscard]] std::vector<int> multi_index(std::size_t flat) const {
    std::vector<int> idx(static_cast<std::size_t>(rank_));
    for (int k = rank_ - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  T& operator()(std::initializer_list<int> idx) { return data_[offset({idx.begin(), idx.size()})]; }
  const T& operator()(std::initializer_list<int> idx) const { return data_[offset({idx.begin(), idx.size()})]; }
  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }
  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  [[nodiscard]] std::vector<T>& data() noexcept { return data_; }
  [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

  template <class F>
  [[nodiscard]] auto map(F f) const -> Tensor<decltype(f(std::declval<const T&>()))> {
    Tensor<decltype(f(std::declval<const T&>()))> out(dim_, rank_);
    for (std::size_t i = 0; i < data_.size(); ++i) out[i] = f(data_[i]);
    return out;
  }

 private:
  static std::size_t count(int dim, int rank) {
    std::size_t n = 1;
    for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
    return n;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

// ---------------------------------------------------------------------------
// Entry arithmetic shared by both modes

inline bool is_zero_entry(Real v) { return v == 0.0L; }
inline bool is_zero_entry(const Expr& e) { return e.is_zero(); }

/// Sum of products. For Expr the terms are collected and canonicalised once.
template <class T>
class Accumulator;

template <>
class Accumulator<Real> {
 public:
  void add(Real v) { sum_ += v; }
  void add_product(Real a, Real b) { sum_ += a * b; }
  void add_product(Real a, Real b, Real c) { sum_ += a * b * c; }
  [[nodiscard]] Real result() const { return sum_; }

 private:
  Real sum_ = 0.0L;
};

template <>
class Accumulator<Expr> {
 public:
  void add(const Expr& v) {
    if (!v.is_zero()) terms_.push_back(v);
  }
  void add_product(const Expr& a, const Expr& b) {
    if (!a.is_zero() && !b.is_zero()) terms_.push_back(a * b);
  }
  void add_product(const Expr& a, const Expr& b, const Expr& c) {
    if (!a.is_zero() && !b.is_zero() && !c.is_zero()) terms_.push_back(mul({a, b, c}));
  }
  [[nodiscard]] Expr result() const { return add(terms_); }

 private:
  static Expr add(const std::vector<Expr>& t) { return curvx::add(t); }
  std::vector<Expr> terms_;
};

template <class T>
[[nodiscard]] Tensor<T> operator+(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw ShapeError("tensor sum shape mismatch");
  Tensor<T> out(a.dim(), a.rank());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

template <class T>
[[nodiscard]] Tensor<T> operator-(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw ShapeError("tensor difference shape mismatch");
  Tensor<T> out(a.dim(), a.rank());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T>
[[nodiscard]] Tensor<T> operator*(const T& s, const Tensor<T>& a) {
  Tensor<T> out(a.dim(), a.rank());
  if (is_zero_entry(s)) return out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero_entry(a[i])) out[i] = s * a[i];
  }
  return out;
}

[[nodiscard]] Tensor<Real> evaluate(const Tensor<Expr>& t, Evaluator& ev);

/// Largest |entry|.
[[nodiscard]] Real max_abs(const Tensor<Real>& t);

/// Largest violation of the declared symmetry, in absolute terms.
[[nodiscard]] Real symmetry_violation(const Tensor<Real>& t, Symmetry s);

// ---------------------------------------------------------------------------
// Products

/// (τ∧λ)_{ijkl} = τ_il λ_jk − τ_ik λ_jl + τ_jk λ_il − τ_jl λ_ik.
template <class T>
[[nodiscard]] Tensor<T> kulkarni_nomizu(const Tensor<T>& tau, const Tensor<T>& lam) {
  if (tau.rank() != 2 || lam.rank() != 2 || tau.dim() != lam.dim()) throw ShapeError("kulkarni_nomizu needs two (0,2) tensors");
  const int n = tau.dim();
  Tensor<T> out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Accumulator<T> acc;
          acc.add_product(tau({i, l}), lam({j, k}));
          acc.add_product(T(-1), tau({i, k}), lam({j, l}));
          acc.add_product(tau({j, k}), lam({i, l}));
          acc.add_product(T(-1), tau({j, l}), lam({i, k}));
          out({i, j, k, l}) = acc.result();
        }
  return out;
}

/// (D·η)_{i1..il αβ} = −Σ_p g^{uv} D_{αβ i_p v} η_{i1..u..il}.
template <class T>
[[nodiscard]] Tensor<T> dot_action(const Tensor<T>& D, const Tensor<T>& eta, const Tensor<T>& g_inv) {
  if (D.rank() != 4 || eta.rank() < 2 || g_inv.rank() != 2 || D.dim() != eta.dim() || D.dim() != g_inv.dim()) {
    throw ShapeError("dot_action needs a (0,4) tensor, a (0,l) tensor with l >= 2 and the inverse metric");
  }
  const int n = D.dim();
  const int l = eta.rank();
  // Dm(u, α, β, i) = g^{uv} D_{αβ i v}
  Tensor<T> Dm(n, 4);
  for (int u = 0; u < n; ++u)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i) {
          Accumulator<T> acc;
          for (int v = 0; v < n; ++v) acc.add_product(g_inv({u, v}), D({a, b, i, v}));
          Dm({u, a, b, i}) = acc.result();
        }
  Tensor<T> out(n, l + 2);
  std::vector<int> eta_idx(static_cast<std::size_t>(l));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> idx = out.multi_index(flat);
    const int a = idx[static_cast<std::size_t>(l)];
    const int b = idx[static_cast<std::size_t>(l + 1)];
    if (a == b) continue;
    Accumulator<T> acc;
    for (int p = 0; p < l; ++p) {
      std::copy(idx.begin(), idx.begin() + l, eta_idx.begin());
      const int ip = idx[static_cast<std::size_t>(p)];
      for (int u = 0; u < n; ++u) {
        const T& d = Dm({u, a, b, ip});
        if (is_zero_entry(d)) continue;
        eta_idx[static_cast<std::size_t>(p)] = u;
        acc.add_product(T(-1), d, eta.at(eta_idx));
      }
    }
    out[flat] = acc.result();
  }
  return out;
}

/// Q(λ,η) = −(X∧_λY)·η, in components
/// Q_{i1..il αβ} = Σ_p [λ_{i_p α} η_{i1..β..il} − λ_{i_p β} η_{i1..α..il}].
template <class T>
[[nodiscard]] Tensor<T> tachibana(const Tensor<T>& lam, const Tensor<T>& eta) {
  if (lam.rank() != 2 || eta.rank() < 2 || lam.dim() != eta.dim()) throw ShapeError("tachibana needs a (0,2) and a (0,l) tensor, l >= 2");
  const int n = lam.dim();
  const int l = eta.rank();
  Tensor<T> out(n, l + 2);
  std::vector<int> eta_idx(static_cast<std::size_t>(l));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> idx = out.multi_index(flat);
    const int a = idx[static_cast<std::size_t>(l)];
    const int b = idx[static_cast<std::size_t>(l + 1)];
    if (a == b) continue;
    Accumulator<T> acc;
    for (int p = 0; p < l; ++p) {
      std::copy(idx.begin(), idx.begin() + l, eta_idx.begin());
      const int ip = idx[static_cast<std::size_t>(p)];
      eta_idx[static_cast<std::size_t>(p)] = b;
      acc.add_product(lam({ip, a}), eta.at(eta_idx));
      eta_idx[static_cast<std::size_t>(p)] = a;
      acc.add_product(T(-1), lam({ip, b}), eta.at(eta_idx));
    }
    out[flat] = acc.result();
  }
  return out;
}

/// Contraction with the inverse metric over two slots: g^{ab} T_{..a..b..}.
template <class T>
[[nodiscard]] Tensor<T> metric_trace(const Tensor<T>& t, const Tensor<T>& g_inv, int slot_a, int slot_b) {
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= t.rank() || slot_b >= t.rank()) {
    throw ShapeError("metric_trace slots out of range");
  }
  const int n = t.dim();
  Tensor<T> out(n, t.rank() - 2);
  std::vector<int> full(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::vector<int> rest = out.multi_index(flat);
    Accumulator<T> acc;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const T& gab = g_inv({a, b});
        if (is_zero_entry(gab)) continue;
        std::size_t r = 0;
        for (int s = 0; s < t.rank(); ++s) {
          if (s == slot_a) {
            full[static_cast<std::size_t>(s)] = a;
          } else if (s == slot_b) {
            full[static_cast<std::size_t>(s)] = b;
          } else {
            full[static_cast<std::size_t>(s)] = rest[r++];
          }
        }
        acc.add_product(gab, t.at(full));
      }
    out[flat] = acc.result();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Metric

struct MetricData {
  std::vector<std::string> coords;
  Tensor<Expr> g;
  Tensor<Expr> g_inv;
  Expr det;
};

/// Exact inverse via the adjugate. Throws SingularMetricError when the
/// determinant vanishes identically (probabilistic test over `ranges`).
[[nodiscard]] MetricData invert_metric(const Tensor<Expr>& g, std::vector<std::string> coords,
                                       const SymbolRanges& ranges = {});

/// Symbolic determinant by cofactor expansion.
[[nodiscard]] Expr determinant(const Tensor<Expr>& m);

}  // namespace curvx
