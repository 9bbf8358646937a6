#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "curvx/classify.hpp"

namespace curvx {

namespace {

using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Singular values below this fraction of the largest count as zero when
// reducing a dependent basis.
constexpr Real kReduceCutoff = 1e-10L;

// Rows where the target or some column is nonzero; everything else
// contributes nothing to the fit.
std::vector<std::size_t> active_rows(const Tensor<Real>* target, const std::vector<Tensor<Real>>& cols) {
  const std::size_t size = target ? target->size() : cols.front().size();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < size; ++i) {
    bool any = target && (*target)[i] != 0.0L;
    for (std::size_t c = 0; !any && c < cols.size(); ++c) any = cols[c][i] != 0.0L;
    if (any) rows.push_back(i);
  }
  return rows;
}

void check_shapes(const Tensor<Real>* target, const std::vector<Tensor<Real>>& cols) {
  const Tensor<Real>& ref = target ? *target : cols.front();
  for (const auto& c : cols) {
    if (c.dim() != ref.dim() || c.rank() != ref.rank()) throw ShapeError("fit basis does not match the target shape");
  }
}

}  // namespace

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

PointFit fit_point(const Tensor<Real>& target, const std::vector<Tensor<Real>>& basis, RankPolicy policy, Real scale) {
  check_shapes(&target, basis);
  const std::size_t k = basis.size();
  const Real tmax = max_abs(target);
  PointFit out;
  out.values.assign(k, 0.0L);

  std::vector<Real> norms(k);
  std::size_t live = 0;
  for (std::size_t c = 0; c < k; ++c) {
    norms[c] = max_abs(basis[c]);
    if (norms[c] > 0.0L) ++live;
  }

  if (live == 0) {
    // Nothing to fit with: the relation reduces to target = 0.
    const Real denom = std::max(tmax, scale);
    if (denom == 0.0L) {
      out.degenerate = true;
      out.values.clear();
      return out;
    }
    if (k > 0 && tmax == 0.0L) {
      out.degenerate = true;
      out.values.clear();
      return out;
    }
    out.residual = tmax / denom;
    return out;
  }
  if (policy == RankPolicy::Strict && live < k) {
    out.degenerate = true;
    out.values.clear();
    return out;
  }

  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < k; ++c)
    if (norms[c] > 0.0L) cols.push_back(c);
  std::vector<Tensor<Real>> used;
  for (std::size_t c : cols) used.push_back(basis[c]);
  const auto rows = active_rows(&target, used);

  Matrix A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  Vector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    b(static_cast<Eigen::Index>(r)) = target[rows[r]];
    for (std::size_t c = 0; c < cols.size(); ++c) {
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = basis[cols[c]][rows[r]] / norms[cols[c]];
    }
  }

  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const Real smax = sv(0);
  const Real smin = sv(sv.size() - 1);
  const bool dependent = smin == 0.0L || (smax / smin) * (smax / smin) > kGramConditionLimit;
  if (dependent && policy == RankPolicy::Strict) {
    out.degenerate = true;
    out.values.clear();
    return out;
  }

  Vector utb = svd.matrixU().transpose() * b;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kReduceCutoff * smax) {
      utb(i) /= sv(i);
      ++rank;
    } else {
      utb(i) = 0.0L;
    }
  }
  const Vector x = svd.matrixV() * utb;
  out.rank = rank;
  for (std::size_t c = 0; c < cols.size(); ++c) out.values[cols[c]] = x(static_cast<Eigen::Index>(c)) / norms[cols[c]];

  Real worst = 0.0L;
  for (std::size_t i = 0; i < target.size(); ++i) {
    Real v = target[i];
    for (std::size_t c : cols) v -= out.values[c] * basis[c][i];
    worst = std::max(worst, std::fabs(v));
  }
  Real denom = std::max(tmax, scale);
  for (std::size_t c : cols) denom = std::max(denom, std::fabs(out.values[c]) * norms[c]);
  out.residual = denom > 0.0L ? worst / denom : 0.0L;
  if (!std::isfinite(out.residual)) out.residual = std::numeric_limits<Real>::infinity();
  return out;
}

PointFit null_direction(const std::vector<Tensor<Real>>& columns) {
  if (columns.empty()) throw Error("null_direction needs at least one column");
  check_shapes(nullptr, columns);
  const std::size_t k = columns.size();
  PointFit out;
  std::vector<Real> norms(k);
  bool any = false;
  for (std::size_t c = 0; c < k; ++c) {
    norms[c] = max_abs(columns[c]);
    any = any || norms[c] > 0.0L;
  }
  if (!any) {
    out.degenerate = true;
    return out;
  }
  out.values.assign(k, 0.0L);
  for (std::size_t c = 0; c < k; ++c) {
    // A vanishing column is a null direction on its own.
    if (norms[c] == 0.0L) {
      out.values[c] = 1.0L;
      out.residual = 0.0L;
      out.rank = 0;
      return out;
    }
  }
  const auto rows = active_rows(nullptr, columns);
  Matrix A(static_cast<Eigen::Index>(std::max(rows.size(), k)), static_cast<Eigen::Index>(k));
  A.setZero();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < k; ++c)
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = columns[c][rows[r]] / norms[c];
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Eigen::Index last = sv.size() - 1;
  out.residual = sv(last) / sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kReduceCutoff * sv(0)) ++rank;
  out.rank = rank;
  Real big = 0.0L;
  for (std::size_t c = 0; c < k; ++c) {
    out.values[c] = svd.matrixV()(static_cast<Eigen::Index>(c), last) / norms[c];
    if (std::fabs(out.values[c]) > std::fabs(big)) big = out.values[c];
  }
  for (auto& v : out.values) v /= big;  // largest component +1, fixes the sign
  return out;
}

CoefficientFit summarize_fit(std::string relation, std::vector<std::string> labels, std::vector<PointFit> points,
                             Real tol) {
  CoefficientFit fit;
  fit.relation = std::move(relation);
  fit.labels = std::move(labels);
  fit.points = std::move(points);
  bool any = false;
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    const PointFit& p = fit.points[i];
    if (p.degenerate) continue;
    if (!any || p.residual > fit.residual) {
      fit.residual = p.residual;
      fit.witness = static_cast<int>(i);
    }
    any = true;
    if (p.rank > 0 && p.rank < static_cast<int>(p.values.size())) fit.reduced = true;
  }
  if (!any) {
    fit.verdict = Verdict::Degenerate;
    fit.witness = -1;
  } else {
    fit.verdict = fit.residual <= tol ? Verdict::Holds : Verdict::Fails;
  }
  return fit;
}

CoefficientFit fit_relation(
    const SamplePlan& plan, std::string relation, std::vector<std::string> labels, Real tol, RankPolicy policy,
    const std::function<std::pair<Tensor<Real>, std::vector<Tensor<Real>>>(const PointTensors&)>& build) {
  std::vector<PointFit> fits;
  fits.reserve(plan.points.size());
  for (const auto& p : plan.points) {
    auto [target, basis] = build(p);
    fits.push_back(fit_point(target, basis, policy));
  }
  return summarize_fit(std::move(relation), std::move(labels), std::move(fits), tol);
}

}  // namespace curvx
