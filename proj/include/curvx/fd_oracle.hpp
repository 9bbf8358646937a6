#pragma once

// Independent numeric curvature built only from metric values: every
// derivative is a 5-point central difference, nested for higher orders, and
// the inverse metric comes from a dense LU solve. Shares no symbolic code
// with the main pipeline, which makes it usable as a cross-check.

#include "curvx/tensor.hpp"

namespace curvx {

class FdOracle {
 public:
  FdOracle(Tensor<Expr> g, std::vector<std::string> coords, Real step = 1e-3L);

  [[nodiscard]] Tensor<Real> metric(const Binding& b) const;
  [[nodiscard]] Tensor<Real> inverse_metric(const Binding& b) const;
  [[nodiscard]] Tensor<Real> christoffel(const Binding& b) const;
  [[nodiscard]] Tensor<Real> riemann(const Binding& b) const;
  [[nodiscard]] Tensor<Real> ricci(const Binding& b) const;
  [[nodiscard]] Real scalar(const Binding& b) const;
  /// ∇R with the derivative slot last.
  [[nodiscard]] Tensor<Real> nabla_riemann(const Binding& b) const;

  /// Appends a derivative slot: out(.., k) = ∂_k f(..) by central differences.
  template <class F>
  [[nodiscard]] Tensor<Real> gradient(const F& f, const Binding& b) const;

 private:
  Tensor<Expr> g_;
  std::vector<std::string> coords_;
  Real step_;
};

template <class F>
Tensor<Real> FdOracle::gradient(const F& f, const Binding& b) const {
  const int n = static_cast<int>(coords_.size());
  std::vector<Tensor<Real>> partials;
  partials.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::string& x = coords_[static_cast<std::size_t>(k)];
    const Real x0 = b.at(x);
    auto at = [&](Real offset) {
      Binding shifted = b;
      shifted.set(x, x0 + offset);
      return f(shifted);
    };
    const Tensor<Real> m2 = at(-2 * step_);
    const Tensor<Real> m1 = at(-step_);
    const Tensor<Real> p1 = at(step_);
    const Tensor<Real> p2 = at(2 * step_);
    Tensor<Real> d(m1.dim(), m1.rank());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (m2[i] - 8 * m1[i] + 8 * p1[i] - p2[i]) / (12 * step_);
    partials.push_back(std::move(d));
  }
  const Tensor<Real>& first = partials.front();
  Tensor<Real> out(n, first.rank() + 1);
  for (std::size_t i = 0; i < first.size(); ++i)
    for (int k = 0; k < n; ++k) out[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = partials[static_cast<std::size_t>(k)][i];
  return out;
}

}  // namespace curvx
