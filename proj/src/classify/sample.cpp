#include <algorithm>
#include <cmath>

#include "curvx/classify.hpp"

namespace curvx {

namespace {

constexpr Real kHorizonGuard = 1e-3L;
constexpr Real kDeterminantGuard = 1e-12L;

bool all_finite(const Tensor<Real>& t) {
  for (Real v : t.data())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

PointTensors evaluate_point(const CurvatureBundle& b, const Binding& at) {
  Evaluator ev(at);
  PointTensors p;
  p.at = at;
  for (const auto& c : b.metric.coords) p.coords.push_back(at.at(c));
  p.g = evaluate(b.metric.g, ev);
  p.g_inv = evaluate(b.metric.g_inv, ev);
  p.R = evaluate(b.R, ev);
  p.S = evaluate(b.S, ev);
  p.kappa = ev(b.kappa);
  p.J = evaluate(b.J, ev);
  p.S2 = evaluate(b.S2, ev);
  p.C = evaluate(b.C, ev);
  p.P = evaluate(b.P, ev);
  p.W = evaluate(b.W, ev);
  p.K = evaluate(b.K, ev);
  p.nablaR = evaluate(b.nablaR, ev);
  p.nablaC = evaluate(b.nablaC, ev);
  p.nablaS = evaluate(b.nablaS, ev);
  p.T = evaluate(b.T, ev);
  return p;
}

SamplePlan make_sample_plan(const MetricSpec& spec, const CurvatureBundle& bundle, const ClassifyOptions& options) {
  if (options.points < 1) throw Error("sample plan needs at least one point");
  for (const auto& [name, value] : options.params) {
    (void)value;
    if (std::find(spec.params.begin(), spec.params.end(), name) == spec.params.end()) {
      throw UnknownSymbolError(name);
    }
  }
  SamplePlan plan;
  plan.coords = spec.coords;
  plan.params = spec.parameter_binding(options.params);
  plan.seed = options.seed;
  plan.lambda = options.lambda;

  const std::set<std::string> coord_set(spec.coords.begin(), spec.coords.end());
  const int cap = 50 * options.points + 50;
  std::uint64_t draw = 0;
  for (int attempt = 0; attempt < cap && static_cast<int>(plan.points.size()) < options.points; ++attempt) {
    const std::uint64_t seed = options.seed * 0x9E3779B97F4A7C15ULL + 0x51A7ULL + draw++;
    Binding at = sample_binding(coord_set, spec.ranges, seed);
    for (const auto& [name, v] : plan.params.values()) at.set(name, v);
    at.set(kLambdaSymbol, options.lambda);

    PointTensors p;
    try {
      p = evaluate_point(bundle, at);
    } catch (const DomainError&) {
      continue;
    }
    bool ok = all_finite(p.g) && all_finite(p.g_inv) && all_finite(p.R) && all_finite(p.nablaR) &&
              all_finite(p.nablaC) && all_finite(p.nablaS) && all_finite(p.T) && std::isfinite(p.kappa);
    for (int i = 0; ok && i < spec.dim; ++i) {
      if (!bundle.metric.g({i, i}).is_zero() && std::fabs(p.g({i, i})) <= kHorizonGuard) ok = false;
    }
    if (ok) {
      try {
        if (std::fabs(evaluate(bundle.metric.det, at)) <= kDeterminantGuard) ok = false;
      } catch (const DomainError&) {
        ok = false;
      }
    }
    if (ok) plan.points.push_back(std::move(p));
  }
  if (static_cast<int>(plan.points.size()) < options.points) {
    throw DomainError("sample plan", static_cast<Real>(plan.points.size()),
                      "could not find " + std::to_string(options.points) + " regular sample points");
  }
  return plan;
}

}  // namespace curvx
