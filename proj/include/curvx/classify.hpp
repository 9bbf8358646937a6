#pragma once

// Structure classification by per-point linear-dependence fits.
//
// Every symbolic tensor of the bundle is evaluated at a deterministic set of
// sample points; relations such as D·η = L·Q(g,η) are then decided by a
// least-squares fit at each point with the unknown functions and 1-forms as
// coefficients. A relation holds iff the relative sup-norm residual stays
// below the tolerance at every non-degenerate point.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curvx/catalog.hpp"
#include "curvx/curvature.hpp"

namespace curvx {

enum class Verdict { Holds, Fails, Degenerate };

[[nodiscard]] std::string_view verdict_name(Verdict v) noexcept;

/// What to do with a linearly dependent basis.
///   Strict: the point is degenerate (coefficients would not be unique).
///   Reduce: fit with the minimum-norm solution over the numerical range.
enum class RankPolicy { Strict, Reduce };

struct PointFit {
  std::vector<Real> values;
  Real residual = 0.0L;
  bool degenerate = false;
  int rank = 0;
};

struct CoefficientFit {
  std::string relation;
  std::vector<std::string> labels;
  std::vector<PointFit> points;
  /// Largest residual over the non-degenerate points.
  Real residual = 0.0L;
  Verdict verdict = Verdict::Degenerate;
  /// Point with the largest residual, -1 when every point is degenerate.
  int witness = -1;
  /// Some point had a rank-deficient basis that was reduced.
  bool reduced = false;
};

/// Condition-number bound on the column-normalised Gram matrix above which a
/// Strict fit is degenerate.
inline constexpr Real kGramConditionLimit = 1e10L;

/// Solves target ≈ Σ c_i basis_i at one point.
/// residual = max|target − Σ c_i basis_i| / max(max|target|, max_i |c_i|·max|basis_i|, scale).
/// `scale` is a natural magnitude for the target when it may vanish.
[[nodiscard]] PointFit fit_point(const Tensor<Real>& target, const std::vector<Tensor<Real>>& basis,
                                 RankPolicy policy = RankPolicy::Strict, Real scale = 0.0L);

/// Smallest relative singular value of the map c ↦ Σ c_i columns_i; `values`
/// is the corresponding (normalised) null direction. Degenerate when every
/// column vanishes.
[[nodiscard]] PointFit null_direction(const std::vector<Tensor<Real>>& columns);

/// Aggregates per-point fits into a verdict.
[[nodiscard]] CoefficientFit summarize_fit(std::string relation, std::vector<std::string> labels,
                                           std::vector<PointFit> points, Real tol);

/// Numeric curvature at one sample point.
struct PointTensors {
  Binding at;
  std::vector<Real> coords;
  Tensor<Real> g, g_inv, R, S, J, S2, C, P, W, K, nablaR, nablaC, nablaS, T;
  Real kappa = 0.0L;
};

struct ClassifyOptions {
  int points = 12;
  std::uint64_t seed = 42;
  Real tol = 1e-9L;
  Real lambda = 0.0L;
  std::map<std::string, Real> params;
};

struct SamplePlan {
  std::vector<std::string> coords;
  Binding params;
  std::uint64_t seed = 0;
  Real lambda = 0.0L;
  std::vector<PointTensors> points;
};

/// Samples coordinates inside the metric's ranges, rejecting points where an
/// evaluation leaves the domain, the metric is nearly singular or a nonzero
/// diagonal component has |g_ii| <= 1e-3 (horizon avoidance).
[[nodiscard]] SamplePlan make_sample_plan(const MetricSpec& spec, const CurvatureBundle& bundle,
                                          const ClassifyOptions& options);

[[nodiscard]] PointTensors evaluate_point(const CurvatureBundle& bundle, const Binding& at);

/// Generic per-point relation: `build` returns (target, basis) at a point.
[[nodiscard]] CoefficientFit fit_relation(
    const SamplePlan& plan, std::string relation, std::vector<std::string> labels, Real tol, RankPolicy policy,
    const std::function<std::pair<Tensor<Real>, std::vector<Tensor<Real>>>(const PointTensors&)>& build);

struct Structure {
  std::string name;
  CoefficientFit fit;
  std::optional<bool> reference_match;
  std::string note;
};

struct StructureReport {
  std::string metric;
  std::map<std::string, Real> params;
  std::uint64_t seed = 0;
  Real lambda = 0.0L;
  Real tol = 0.0L;
  std::vector<std::string> coords;
  std::vector<std::vector<Real>> points;
  bool flat = false;
  std::vector<Structure> structures;
  std::vector<std::string> discrepancies;

  [[nodiscard]] const Structure* find(std::string_view name) const;
  [[nodiscard]] Verdict verdict(std::string_view name) const;
};

// Partial classifiers. Each returns its structures in a fixed order.
[[nodiscard]] std::vector<Structure> classify_pseudosymmetries(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_einstein(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_roter(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_recurrence(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_form_recurrence(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_ricci_properties(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_symmetry_forms(const SamplePlan& plan, Real tol);
[[nodiscard]] std::vector<Structure> classify_T_pseudosymmetry(const SamplePlan& plan, Real tol);

/// Full report. For the Bardeen builtin the fitted coefficients are also
/// compared against the reference closed forms (see reference.hpp).
[[nodiscard]] StructureReport classify(const MetricSpec& spec, const CurvatureBundle& bundle,
                                       const ClassifyOptions& options);

struct ComparisonRow {
  std::string label;
  std::vector<std::string> structures;
  std::vector<Verdict> first;
  std::vector<Verdict> second;
  bool reproduced = false;
};

struct Comparison {
  std::string first;
  std::string second;
  std::vector<std::string> shared_holds;
  std::vector<std::string> shared_fails;
  std::vector<std::string> differing;
  std::vector<ComparisonRow> similarities;
  std::vector<ComparisonRow> dissimilarities;

  [[nodiscard]] bool reproduces_reference() const;
};

/// Throws Error when the two reports list different structures.
[[nodiscard]] Comparison compare_metrics(const StructureReport& a, const StructureReport& b);

}  // namespace curvx
