#include "curvx/fd_oracle.hpp"

#include <Eigen/Dense>

#include "curvx/curvature.hpp"

namespace curvx {

using MatrixL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

FdOracle::FdOracle(Tensor<Expr> g, std::vector<std::string> coords, Real step)
    : g_(std::move(g)), coords_(std::move(coords)), step_(step) {}

Tensor<Real> FdOracle::metric(const Binding& b) const {
  Evaluator ev(b);
  return evaluate(g_, ev);
}

Tensor<Real> FdOracle::inverse_metric(const Binding& b) const {
  const Tensor<Real> g = metric(b);
  const int n = g.dim();
  MatrixL m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g({i, j});
  const MatrixL inv = m.partialPivLu().inverse();
  Tensor<Real> out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out({i, j}) = inv(i, j);
  return out;
}

Tensor<Real> FdOracle::christoffel(const Binding& b) const {
  const Tensor<Real> dg = gradient([this](const Binding& x) { return metric(x); }, b);
  const Tensor<Real> gi = inverse_metric(b);
  const int n = gi.dim();
  Tensor<Real> gamma(n, 3);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Real s = 0.0L;
        for (int k = 0; k < n; ++k) s += gi({h, k}) * (dg({j, k, i}) + dg({i, k, j}) - dg({i, j, k}));
        gamma({h, i, j}) = s / 2;
      }
  return gamma;
}

Tensor<Real> FdOracle::riemann(const Binding& b) const {
  const Tensor<Real> dgamma = gradient([this](const Binding& x) { return christoffel(x); }, b);
  return riemann_from_parts(christoffel(b), dgamma, metric(b));
}

Tensor<Real> FdOracle::ricci(const Binding& b) const { return metric_trace(riemann(b), inverse_metric(b), 0, 3); }

Real FdOracle::scalar(const Binding& b) const {
  const Tensor<Real> S = ricci(b);
  const Tensor<Real> gi = inverse_metric(b);
  Real k = 0.0L;
  for (int i = 0; i < S.dim(); ++i)
    for (int j = 0; j < S.dim(); ++j) k += gi({i, j}) * S({i, j});
  return k;
}

Tensor<Real> FdOracle::nabla_riemann(const Binding& b) const {
  const Tensor<Real> dR = gradient([this](const Binding& x) { return riemann(x); }, b);
  return covariant_derivative_from_parts(riemann(b), dR, christoffel(b));
}

}  // namespace curvx
