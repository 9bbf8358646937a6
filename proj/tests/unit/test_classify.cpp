#include <doctest.h>

#include <random>

#include "curvx/classify.hpp"
#include "curvx/reference.hpp"
#include "curvx/report.hpp"
#include "curvx/verify.hpp"
#include "support.hpp"

using namespace curvx;
using namespace testsupport;

namespace {

Tensor<Real> vec(std::initializer_list<Real> v) {
  Tensor<Real> t(static_cast<int>(v.size()), 1);
  std::size_t i = 0;
  for (Real x : v) t[i++] = x;
  return t;
}

const StructureReport& report(const std::string& id) {
  static std::map<std::string, StructureReport> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, classify(builtin(id), bundle(id), {})).first;
  return it->second;
}

// A metric with no symmetry at all; generic metrics satisfy none of the
// special curvature conditions.
constexpr const char* kLumpy = R"(dim 4
coords t x y z
params a
range x 1 2
range y 1 2
range z 1 2
default a 1/5
g[0][0] = -(1 + a*x*y)
g[1][1] = 1 + a*y^2*z
g[2][2] = 1 + a*x*z^2
g[3][3] = 1 + a*x^2*y
)";

}  // namespace

TEST_CASE("fit_point: exact combination, inconsistent target, degenerate basis") {
  const auto a = vec({1, 0, 2});
  const auto b = vec({0, 1, 1});
  const auto t = 3.0L * a - 2.0L * b;
  PointFit f = fit_point(t, {a, b});
  REQUIRE_FALSE(f.degenerate);
  CHECK(f.values[0] == doctest::Approx(3.0));
  CHECK(f.values[1] == doctest::Approx(-2.0));
  CHECK(f.residual < 1e-15L);

  f = fit_point(vec({1, 1, 0}), {a});
  CHECK(f.residual > 0.1L);

  CHECK(fit_point(t, {a, 2.0L * a}).degenerate);
  CHECK(fit_point(t, {a, Tensor<Real>(3, 1)}).degenerate);
  const PointFit reduced = fit_point(2.0L * a, {a, 2.0L * a}, RankPolicy::Reduce);
  CHECK_FALSE(reduced.degenerate);
  CHECK(reduced.rank == 1);
  CHECK(reduced.residual < 1e-15L);

  // nothing to fit: zero target is degenerate, nonzero target fails
  CHECK(fit_point(Tensor<Real>(3, 1), {Tensor<Real>(3, 1)}).degenerate);
  CHECK(fit_point(a, {Tensor<Real>(3, 1)}).residual == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)fit_point(a, {Tensor<Real>(4, 1)}), ShapeError);
}

TEST_CASE("fit_point: residual does not depend on the scale of the data") {
  const auto a = vec({1, 2, 3});
  const auto t = vec({1, 0, 0});
  const Real r1 = fit_point(t, {a}).residual;
  const Real r2 = fit_point(1e-12L * t, {1e-12L * a}).residual;
  const Real r3 = fit_point(1e9L * t, {a}).residual;
  CHECK(r1 == doctest::Approx(static_cast<double>(r2)).epsilon(1e-12));
  CHECK(r1 == doctest::Approx(static_cast<double>(r3)).epsilon(1e-12));
}

TEST_CASE("null_direction") {
  const auto a = vec({1, 0, 2});
  const auto b = vec({0, 1, 1});
  PointFit f = null_direction({a, b, a - 3.0L * b});
  CHECK(f.residual < 1e-15L);
  // 1·a − 3·b − 1·(a − 3b) = 0, scaled so the largest entry is +1
  CHECK(f.values[1] == doctest::Approx(1.0));
  CHECK(f.values[0] == doctest::Approx(-1.0 / 3));
  CHECK(f.values[2] == doctest::Approx(1.0 / 3));

  f = null_direction({a, b});
  CHECK(f.residual > 0.1L);
  CHECK(null_direction({Tensor<Real>(3, 1)}).degenerate);
  f = null_direction({a, Tensor<Real>(3, 1)});
  CHECK(f.residual == 0.0L);
  CHECK(f.values[1] == 1.0L);
}

TEST_CASE("summarize_fit: worst point is the witness, all degenerate is degenerate") {
  PointFit good{{1.0L}, 1e-14L, false, 1};
  PointFit bad{{1.0L}, 1e-3L, false, 1};
  PointFit dead{{}, 0.0L, true, 0};
  CoefficientFit f = summarize_fit("x", {"L"}, {good, bad, dead}, 1e-9L);
  CHECK(f.verdict == Verdict::Fails);
  CHECK(f.witness == 1);
  f = summarize_fit("x", {"L"}, {good, dead}, 1e-9L);
  CHECK(f.verdict == Verdict::Holds);
  f = summarize_fit("x", {"L"}, {dead, dead}, 1e-9L);
  CHECK(f.verdict == Verdict::Degenerate);
  CHECK(f.witness == -1);
}

TEST_CASE("sample plan: deterministic, inside the ranges, away from the horizon") {
  const MetricSpec spec = builtin("bardeen");
  ClassifyOptions o;
  o.points = 6;
  const SamplePlan p1 = make_sample_plan(spec, bundle("bardeen"), o);
  const SamplePlan p2 = make_sample_plan(spec, bundle("bardeen"), o);
  REQUIRE(p1.points.size() == 6);
  for (std::size_t i = 0; i < p1.points.size(); ++i) {
    CHECK(p1.points[i].coords == p2.points[i].coords);
    const Real r = p1.points[i].at.at("r");
    CHECK(r >= 1.5L);
    CHECK(r <= 3.0L);
    CHECK(std::fabs(p1.points[i].g({0, 0})) > 1e-3L);
    CHECK(p1.points[i].at.at("Lambda") == 0.0L);
  }
  o.seed = 43;
  const SamplePlan p3 = make_sample_plan(spec, bundle("bardeen"), o);
  CHECK(p3.points[0].coords != p1.points[0].coords);

  o.params = {{"nope", 1.0L}};
  CHECK_THROWS_AS((void)make_sample_plan(spec, bundle("bardeen"), o), UnknownSymbolError);
}

TEST_CASE("sample plan: gives up when no regular point exists") {
  // the whole r window hugs the horizon r = 2M
  MetricSpec spec = parse_metric(R"(dim 4
coords t r theta phi
params M
range r 1999/1000 2001/1000
default M 1
g[0][0] = -(1 - 2*M/r)
g[1][1] = (1 - 2*M/r)^(-1)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)");
  CHECK_THROWS_AS((void)make_sample_plan(spec, bundle("schwarzschild"), {}), DomainError);
}

TEST_CASE("classify: Bardeen headline verdicts") {
  const StructureReport& r = report("bardeen");
  CHECK(r.structures.size() > 100);
  CHECK(r.points.size() == 12);
  for (const char* name : {"roter", "ein2", "R.R=L*Q(g,R)", "C.C=L*Q(g,C)", "R.R-Q(S,R)=L*Q(g,C)",
                           "C.R-R.C=L1*Q(S,C)+L2*Q(g,C)", "curvature_2forms_recurrent[C]", "ricci_compatible[R]",
                           "ricci_compatible[C]", "T_compatible[R]", "R.T=L*Q(g,T)", "C.T=L*Q(g,T)"}) {
    CAPTURE(name);
    CHECK(r.verdict(name) == Verdict::Holds);
  }
  for (const char* name : {"einstein", "quasi_einstein", "R.R=0", "R.R=L*Q(S,R)", "ricci_codazzi",
                           "ricci_cyclic_parallel", "weakly_symmetric", "chaki_pseudosymmetric", "venzi[R]",
                           "curvature_2forms_recurrent[R]", "recurrent", "scalar_curvature_zero"}) {
    CAPTURE(name);
    CHECK(r.verdict(name) == Verdict::Fails);
    CHECK(r.find(name)->fit.witness >= 0);
  }
  CHECK(r.find("einstein")->note == "einstein level 2");
  CHECK(r.verdict("2_quasi_einstein") == Verdict::Holds);
  CHECK_THROWS_AS((void)r.verdict("no such structure"), Error);
}

TEST_CASE("classify: Bardeen coefficients against the closed forms") {
  const StructureReport& r = report("bardeen");
  const Structure* s = r.find("R.R=L*Q(g,R)");
  REQUIRE(s);
  REQUIRE(s->reference_match.has_value());
  CHECK(*s->reference_match);
  const Expr rho_r = bardeen_closed_form("-M*(2*rho1^2-3*rho^2)/rho1^5");
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    Binding at{{"M", r.params.at("M")}, {"e", r.params.at("e")}};
    for (std::size_t k = 0; k < r.coords.size(); ++k) at.set(r.coords[k], r.points[i][k]);
    Evaluator ev(at);
    CHECK(close(s->fit.points[i].values[0], ev(rho_r), 1e-10L));
  }
  for (const char* name : {"roter", "ein2", "C.R=L*Q(g,R)", "W.R=L*Q(g,R)", "K.R=L*Q(g,R)",
                           "curvature_2forms_recurrent[C]", "C.T=L*Q(g,T)"}) {
    CAPTURE(name);
    REQUIRE(r.find(name)->reference_match.has_value());
    CHECK(*r.find(name)->reference_match);
  }
  // printed rho_bar_1 does not reproduce the fit; the rho_bar_2 slot does
  CHECK_FALSE(*r.find("C.R-R.C=L1*Q(S,R)+L2*Q(g,R)")->reference_match);
  bool logged = false;
  for (const auto& d : r.discrepancies) logged = logged || d.find("rho_bar_2, rho_bar_1") != std::string::npos;
  CHECK(logged);
}

TEST_CASE("classify: controls") {
  const StructureReport& flat = report("minkowski");
  CHECK(flat.flat);
  for (const auto& s : flat.structures) CHECK(s.fit.verdict == Verdict::Degenerate);

  const StructureReport& sch = report("schwarzschild");
  CHECK(sch.verdict("einstein") == Verdict::Holds);
  CHECK(sch.verdict("R.R=L*Q(g,R)") == Verdict::Holds);
  CHECK(sch.verdict("scalar_curvature_zero") == Verdict::Holds);
  CHECK(sch.verdict("roter") == Verdict::Degenerate);

  const StructureReport& rn = report("reissner_nordstrom");
  CHECK(rn.verdict("roter") == Verdict::Holds);
  CHECK(rn.verdict("scalar_curvature_zero") == Verdict::Holds);
}

TEST_CASE("classify: a generic metric satisfies none of the special relations") {
  const MetricSpec spec = parse_metric(kLumpy, "lumpy");
  const CurvatureBundle b = build_bundle(invert_metric(spec.g, spec.coords, spec.ranges), spec.ranges);
  ClassifyOptions o;
  o.points = 6;
  const StructureReport r = classify(spec, b, o);
  for (const char* name : {"R.R=L*Q(g,R)", "C.C=L*Q(g,C)", "roter", "ein2", "einstein", "quasi_einstein",
                           "recurrent", "special_recurrent_like", "ricci_compatible[R]", "ricci_codazzi",
                           "curvature_2forms_recurrent[C]", "R.T=L*Q(g,T)", "scalar_curvature_zero"}) {
    CAPTURE(name);
    CHECK(r.verdict(name) == Verdict::Fails);
  }
  // Ein(4) is the Cayley-Hamilton identity of the Ricci operator
  CHECK(r.verdict("ein4") == Verdict::Holds);
}

TEST_CASE("classify: reports are reproducible") {
  ClassifyOptions o;
  o.points = 5;
  o.seed = 7;
  const auto a = to_json(classify(builtin("reissner_nordstrom"), bundle("reissner_nordstrom"), o)).dump();
  const auto b = to_json(classify(builtin("reissner_nordstrom"), bundle("reissner_nordstrom"), o)).dump();
  CHECK(a == b);
}

TEST_CASE("compare: Bardeen against Reissner-Nordstrom") {
  const Comparison c = compare_metrics(report("bardeen"), report("reissner_nordstrom"));
  REQUIRE(c.similarities.size() == 5);
  REQUIRE(c.dissimilarities.size() == 3);
  for (const auto& row : c.similarities) {
    CAPTURE(row.label);
    CHECK(row.reproduced);
  }
  CHECK(c.dissimilarities[0].reproduced);  // kappa = 0 only for RN
  CHECK(c.shared_holds.size() + c.shared_fails.size() + c.differing.size() <= report("bardeen").structures.size());

  StructureReport cut = report("bardeen");
  cut.structures.pop_back();
  CHECK_THROWS_AS((void)compare_metrics(cut, report("reissner_nordstrom")), Error);
}

TEST_CASE("report JSON follows the schema") {
  const auto j = to_json(report("bardeen"));
  CHECK(j["metric"] == "bardeen");
  CHECK(j["seed"] == 42);
  CHECK(j["params"]["M"] == 1.0);
  REQUIRE(j["structures"].is_array());
  const auto& s = j["structures"][0];
  for (const char* key : {"name", "verdict", "coefficients", "residual", "paper_form_match"}) CHECK(s.contains(key));
  CHECK(j["discrepancies"].is_array());
  bool has_match = false;
  for (const auto& e : j["structures"])
    if (e["name"] == "roter") {
      has_match = e["paper_form_match"] == true;
      CHECK(e["coefficients"].size() == 12);
      CHECK(e["coefficients"][0]["values"].size() == 3);
      CHECK(e["coefficients"][0]["point"].size() == 4);
    }
  CHECK(has_match);
  const std::string md = to_markdown(report("bardeen"));
  CHECK(md.find("| roter | holds |") != std::string::npos);
}

TEST_CASE("verify: every table mismatch is confirmed by the oracle") {
  const VerifyReport v = verify_metric(builtin("bardeen"), bundle("bardeen"));
  CHECK(v.ok());
  CHECK(v.table_entries() == bardeen_tables().size());
  CHECK(v.table_matches() > v.table_entries() / 2);
  for (const auto& c : v.checks) {
    if (c.status != CheckStatus::Flag) continue;
    CAPTURE(c.name);
    REQUIRE(c.engine_value.has_value());
    REQUIRE(c.oracle_value.has_value());
    CHECK(close(*c.engine_value, *c.oracle_value, 1e-6L));
  }
  const VerifyReport s = verify_metric(builtin("schwarzschild"), bundle("schwarzschild"));
  CHECK(s.ok());
  CHECK(s.table_entries() == 0);
  CHECK(s.count(CheckStatus::Pass) == 4);
}

TEST_CASE("verify: a wrong engine value is an error, not a flag") {
  // Swap in a metric whose symbolic R is deliberately corrupted.
  const MetricSpec spec = builtin("schwarzschild");
  CurvatureBundle b = bundle("schwarzschild");
  b.R({0, 1, 0, 1}) = b.R({0, 1, 0, 1}) * Expr(2);
  b.R({1, 0, 1, 0}) = b.R({0, 1, 0, 1});
  b.R({0, 1, 1, 0}) = -b.R({0, 1, 0, 1});
  b.R({1, 0, 0, 1}) = -b.R({0, 1, 0, 1});
  const VerifyReport v = verify_metric(spec, b);
  CHECK_FALSE(v.ok());
}

TEST_CASE("components JSON") {
  const auto j = components_json("S", bundle("schwarzschild").S, std::nullopt);
  CHECK(j["tensor"] == "S");
  CHECK(j["index_base"] == 1);
  CHECK(j["entries"].empty());
  Binding at = bardeen_point(2.0L, 1.0L);
  const auto k = components_json("R", bundle("bardeen").R, at);
  REQUIRE_FALSE(k["entries"].empty());
  CHECK(k["entries"][0]["idx"].size() == 4);
  CHECK(k["entries"][0].contains("value"));
}
