// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "curvx/catalog.hpp"
#include "curvx/classify.hpp"
#include "curvx/curvature.hpp"
#include "curvx/fd_oracle.hpp"
#include "curvx/reference.hpp"
#include "curvx/report.hpp"
#include "curvx/verify.hpp"

using namespace curvx;

namespace {

// Tolerances fixed by the acceptance criteria.
constexpr Real kCoefficientTol = 1e-8L;
constexpr Real kResidualTol = 1e-9L;
constexpr Real kOracleTol = 1e-6L;
constexpr Real kRicciFlatTol = 1e-10L;
constexpr double kRegressionShare = 0.95;
constexpr double kRegressionSeconds = 60.0;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      else detail += "; " + what;
      ok = false;
    }
  }
};

std::string fmt(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", static_cast<double>(v));
  return buf;
}

CurvatureBundle make_bundle(const MetricSpec& spec) {
  return build_bundle(invert_metric(spec.g, spec.coords, spec.ranges), spec.ranges);
}

struct Metric {
  MetricSpec spec;
  CurvatureBundle bundle;
  StructureReport report;
};

Metric load(const std::string& id) {
  Metric m;
  m.spec = builtin(id);
  m.bundle = make_bundle(m.spec);
  m.report = classify(m.spec, m.bundle, {});
  return m;
}

Binding point_binding(const StructureReport& r, std::size_t i) {
  Binding b;
  for (const auto& [k, v] : r.params) b.set(k, v);
  for (std::size_t k = 0; k < r.coords.size(); ++k) b.set(r.coords[k], r.points[i][k]);
  b.set(kLambdaSymbol, r.lambda);
  return b;
}

// Compares the fitted coefficients of `name` against closed forms at every
// non-degenerate point, each slot to relative kCoefficientTol. An empty
// form leaves its slot unchecked.
void expect_forms(Outcome& o, const StructureReport& r, const std::string& name, const std::vector<std::string>& forms) {
  const Structure* s = r.find(name);
  if (!s) {
    o.require(false, name + " missing");
    return;
  }
  o.require(s->fit.verdict == Verdict::Holds, name + " is " + std::string(verdict_name(s->fit.verdict)));
  if (s->fit.verdict != Verdict::Holds) return;
  std::vector<Expr> exprs;
  for (const auto& f : forms) exprs.push_back(f.empty() ? Expr() : bardeen_closed_form(f));
  Real worst = 0;
  int used = 0;
  for (std::size_t i = 0; i < s->fit.points.size(); ++i) {
    const PointFit& p = s->fit.points[i];
    if (p.degenerate) continue;
    ++used;
    Evaluator ev(point_binding(r, i));
    for (std::size_t k = 0; k < exprs.size(); ++k) {
      if (forms[k].empty()) continue;
      const Real ref = ev(exprs[k]);
      worst = std::max(worst, std::fabs(p.values[k] - ref) / std::max(std::fabs(ref), Real(1e-300L)));
    }
  }
  o.require(used == static_cast<int>(r.points.size()), name + ": only " + std::to_string(used) + " usable points");
  o.require(worst <= kCoefficientTol, name + " coefficient off by " + fmt(worst));
}

void expect_verdict(Outcome& o, const StructureReport& r, const std::string& name, Verdict v) {
  const Structure* s = r.find(name);
  if (!s) {
    o.require(false, name + " missing");
    return;
  }
  o.require(s->fit.verdict == v, name + " is " + std::string(verdict_name(s->fit.verdict)) + " (residual " +
                                     fmt(s->fit.residual) + ")");
  if (v == Verdict::Fails) o.require(s->fit.witness >= 0, name + " has no witness");
  if (v == Verdict::Holds && s->fit.verdict == Verdict::Holds)
    o.require(s->fit.residual < kResidualTol, name + " residual " + fmt(s->fit.residual));
}

// ---------------------------------------------------------------------------

Outcome component_regression(const Metric& b) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opts;
  opts.trials = 8;
  const VerifyReport v = verify_metric(b.spec, b.bundle, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double share = static_cast<double>(v.table_matches()) / static_cast<double>(v.table_entries());
  std::size_t unconfirmed = 0;
  for (const auto& c : v.checks)
    if (c.group != kIdentityGroup && c.status == CheckStatus::Error) ++unconfirmed;
  o.require(share >= kRegressionShare, std::to_string(v.table_matches()) + "/" + std::to_string(v.table_entries()) +
                                           " entries match (" + fmt(100 * share) + "%, need 95%)");
  o.require(unconfirmed == 0, std::to_string(unconfirmed) + " mismatches not confirmed by the oracle");
  o.require(v.ok(), "verify reported errors");
  o.require(secs < kRegressionSeconds, "took " + fmt(secs) + " s");
  if (o.ok) o.detail = std::to_string(v.table_matches()) + "/" + std::to_string(v.table_entries()) + " match";
  else o.detail += "; " + std::to_string(v.count(CheckStatus::Flag)) + " flagged, oracle agrees with the engine on all of them";
  o.detail += ", " + fmt(secs) + " s";
  return o;
}

Outcome roter(const Metric& b) {
  Outcome o;
  expect_forms(o, b.report, "roter",
               {"M*(18*rho1^2-25*rho^2)/(25*rho^2*rho1^3)", "rho1^2*(6*rho1^2-5*rho^2)/(25*e^2*rho^2)",
                "(3*rho1^2-5*rho^2)*rho1^7/(150*M*e^4*rho^2)"});
  o.require(b.report.points.size() == 12, "expected 12 points");
  return o;
}

Outcome ein2(const Metric& b) {
  Outcome o;
  expect_verdict(o, b.report, "ein2", Verdict::Holds);
  expect_forms(o, b.report, "ein2", {"3*M*e^2*(4*rho1^2-5*rho^2)/rho1^7", ""});
  expect_verdict(o, b.report, "einstein", Verdict::Fails);
  return o;
}

Outcome pseudosymmetry(const Metric& b) {
  Outcome o;
  for (const char* name : {"R.R=L*Q(g,R)", "R.C=L*Q(g,C)", "C.R=L*Q(g,R)", "C.C=L*Q(g,C)"})
    expect_verdict(o, b.report, name, Verdict::Holds);
  expect_forms(o, b.report, "W.R=L*Q(g,R)", {"-M*rho^2*(3*rho1^2-5*rho^2)/(2*rho1^7)"});
  expect_forms(o, b.report, "K.R=L*Q(g,R)", {"M*(8*e^4-5*e^2*rho^2+2*rho^4)/(2*rho1^7)"});
  expect_verdict(o, b.report, "R.R=0", Verdict::Fails);
  return o;
}

Outcome difference_tensor(const Metric& b) {
  Outcome o;
  expect_verdict(o, b.report, "C.R-R.C=L1*Q(S,R)+L2*Q(g,R)", Verdict::Holds);
  expect_verdict(o, b.report, "C.R-R.C=L1*Q(S,C)+L2*Q(g,C)", Verdict::Holds);
  expect_forms(o, b.report, "C.R-R.C=L1*Q(S,C)+L2*Q(g,C)", {"1", "2*M*(4*rho1^2-5*rho^2)*e^2/rho1^7"});
  return o;
}

Outcome recurrence(const Metric& b) {
  Outcome o;
  const std::string A_r = "2*rho*(8*M-5*rho1)/(5*(-2*M*rho^2+rho1^3))";
  expect_forms(o, b.report, "special_recurrent_like", {"0", A_r, "0", "0"});
  expect_verdict(o, b.report, "weakly_generalized_recurrent", Verdict::Holds);
  expect_verdict(o, b.report, "recurrent", Verdict::Fails);
  return o;
}

Outcome conformal_forms(const Metric& b) {
  Outcome o;
  expect_forms(o, b.report, "curvature_2forms_recurrent[C]",
               {"0", "5*e^2*(3*rho1^2-7*rho^2)/(rho*rho1^2*(3*rho1^2-5*rho^2))", "0", "0"});
  expect_verdict(o, b.report, "curvature_2forms_recurrent[R]", Verdict::Fails);
  return o;
}

Outcome compatibility(const Metric& b) {
  Outcome o;
  for (const char* name : {"ricci_compatible[R]", "ricci_compatible[C]", "T_compatible[R]", "T_compatible[C]"})
    expect_verdict(o, b.report, name, Verdict::Holds);
  for (const char* name : {"ricci_codazzi", "ricci_cyclic_parallel", "chaki_pseudosymmetric", "weakly_symmetric",
                           "venzi[R]", "venzi[C]", "venzi[P]", "venzi[W]", "venzi[K]", "quasi_einstein"})
    expect_verdict(o, b.report, name, Verdict::Fails);
  return o;
}

Outcome comparison(const Metric& b, const Metric& rn) {
  Outcome o;
  const Comparison c = compare_metrics(b.report, rn.report);
  for (const auto& row : c.similarities) o.require(row.reproduced, "similarity '" + row.label + "' not reproduced");
  for (const auto& row : c.dissimilarities)
    o.require(row.reproduced, "dissimilarity '" + row.label + "' not reproduced");
  o.require(c.similarities.size() == 5 && c.dissimilarities.size() == 3, "wrong row count");
  o.require(rn.bundle.kappa.is_zero(), "RN scalar curvature is not identically zero");
  for (std::size_t i = 0; i < b.report.points.size(); ++i) {
    Evaluator ev(point_binding(b.report, i));
    if (ev(b.bundle.kappa) == 0.0L) o.require(false, "Bardeen kappa vanishes at point " + std::to_string(i));
  }
  return o;
}

Outcome controls(const Metric& flat, const Metric& sch, const Metric& b) {
  Outcome o;
  for (const auto& s : flat.report.structures)
    if (s.fit.verdict != Verdict::Degenerate) o.require(false, "Minkowski " + s.name + " is not degenerate");
  o.require(flat.report.flat, "Minkowski not detected as flat");

  ClassifyOptions opts;
  const SamplePlan plan = make_sample_plan(sch.spec, sch.bundle, opts);
  Real ricci = 0;
  for (const auto& p : plan.points) ricci = std::max(ricci, max_abs(p.S));
  o.require(ricci < kRicciFlatTol, "Schwarzschild Ricci reaches " + fmt(ricci));

  // Bardeen → Schwarzschild as e → 0: the gap shrinks like e².
  Real worst_ratio = 0, min_ratio = 1e300L;
  for (std::size_t i = 0; i < plan.points.size(); ++i) {
    const Tensor<Real>& ref = plan.points[i].R;
    std::vector<Real> gaps;
    for (Real e : {1e-2L, 1e-3L, 1e-4L}) {
      Binding at = plan.points[i].at;
      at.set("e", e);
      Evaluator ev(at);
      gaps.push_back(max_abs(evaluate(b.bundle.R, ev) - ref) / (e * e));
    }
    for (Real g : gaps) worst_ratio = std::max(worst_ratio, g);
    // gap/e² must settle to a constant
    const Real spread = std::fabs(gaps[2] - gaps[1]) / std::max(gaps[1], Real(1e-300L));
    min_ratio = std::min(min_ratio, gaps[2]);
    o.require(spread < 1e-2L, "gap/e^2 not converging at point " + std::to_string(i) + " (spread " + fmt(spread) + ")");
  }
  o.require(min_ratio > 0, "Bardeen equals Schwarzschild at finite e");
  if (o.ok) o.detail = "max |R_B - R_S|/e^2 = " + fmt(worst_ratio);
  return o;
}

// Straight index-loop transcriptions of the product definitions.
Real naive_kn(const Tensor<Real>& t, const Tensor<Real>& l, int i, int j, int k, int m) {
  return t({i, m}) * l({j, k}) - t({i, k}) * l({j, m}) + t({j, k}) * l({i, m}) - t({j, m}) * l({i, k});
}

Real naive_dot(const Tensor<Real>& D, const Tensor<Real>& eta, const Tensor<Real>& gi, const std::vector<int>& idx) {
  const int n = D.dim(), l = eta.rank();
  const int a = idx[static_cast<std::size_t>(l)], b = idx[static_cast<std::size_t>(l + 1)];
  Real s = 0;
  for (int p = 0; p < l; ++p)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        std::vector<int> e(idx.begin(), idx.begin() + l);
        const int ip = e[static_cast<std::size_t>(p)];
        e[static_cast<std::size_t>(p)] = u;
        s -= gi({u, v}) * D({a, b, ip, v}) * eta.at(e);
      }
  return s;
}

Real naive_q(const Tensor<Real>& lam, const Tensor<Real>& eta, const std::vector<int>& idx) {
  const int l = eta.rank();
  const int a = idx[static_cast<std::size_t>(l)], b = idx[static_cast<std::size_t>(l + 1)];
  Real s = 0;
  for (int p = 0; p < l; ++p) {
    std::vector<int> e(idx.begin(), idx.begin() + l);
    const int ip = e[static_cast<std::size_t>(p)];
    e[static_cast<std::size_t>(p)] = b;
    s += lam({ip, a}) * eta.at(e);
    e[static_cast<std::size_t>(p)] = a;
    s -= lam({ip, b}) * eta.at(e);
  }
  return s;
}

Outcome oracle_equivalence(const Metric& b) {
  Outcome o;
  std::mt19937_64 gen(2024);
  const auto small = [&] { return static_cast<Real>(static_cast<int>(gen() % 11) - 5); };
  const auto symmetric = [&](int n) {
    Tensor<Real> t(n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) t({i, j}) = t({j, i}) = small();
    return t;
  };
  const auto any = [&](int n, int rank) {
    Tensor<Real> t(n, rank);
    for (auto& v : t.data()) v = small();
    return t;
  };
  int kn_bad = 0, dot_bad = 0, q_bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3;
    const auto t = symmetric(n), l = symmetric(n), gi = symmetric(n), lam = symmetric(n);
    const auto D = kulkarni_nomizu(symmetric(n), symmetric(n)) + kulkarni_nomizu(symmetric(n), symmetric(n));
    const auto eta = any(n, 2 + trial % 3);
    const auto kn = kulkarni_nomizu(t, l);
    for (std::size_t f = 0; f < kn.size(); ++f) {
      const auto i = kn.multi_index(f);
      if (kn[f] != naive_kn(t, l, i[0], i[1], i[2], i[3])) ++kn_bad;
    }
    const auto dot = dot_action(D, eta, gi);
    const auto q = tachibana(lam, eta);
    for (std::size_t f = 0; f < dot.size(); ++f) {
      const auto idx = dot.multi_index(f);
      if (dot[f] != naive_dot(D, eta, gi, idx)) ++dot_bad;
      if (q[f] != naive_q(lam, eta, idx)) ++q_bad;
    }
  }
  o.require(kn_bad == 0, std::to_string(kn_bad) + " Kulkarni-Nomizu entries differ");
  o.require(dot_bad == 0, std::to_string(dot_bad) + " dot_action entries differ");
  o.require(q_bad == 0, std::to_string(q_bad) + " tachibana entries differ");

  ClassifyOptions opts;
  opts.points = 10;
  opts.seed = 11;
  const SamplePlan plan = make_sample_plan(b.spec, b.bundle, opts);
  const FdOracle fd(b.spec.g, b.spec.coords);
  Real worst_gamma = 0, worst_r = 0;
  for (const auto& p : plan.points) {
    Evaluator ev(p.at);
    const auto gamma = evaluate(b.bundle.gamma, ev);
    const auto fg = fd.christoffel(p.at);
    worst_gamma = std::max(worst_gamma, max_abs(gamma - fg) / max_abs(gamma));
    const auto fr = fd.riemann(p.at);
    worst_r = std::max(worst_r, max_abs(p.R - fr) / max_abs(p.R));
  }
  o.require(worst_gamma <= kOracleTol, "Christoffel off by " + fmt(worst_gamma));
  o.require(worst_r <= kOracleTol, "Riemann off by " + fmt(worst_r));
  if (o.ok) o.detail = "FD relative error: Gamma " + fmt(worst_gamma) + ", R " + fmt(worst_r);
  return o;
}

Outcome determinism(const Metric& b) {
  Outcome o;
  const std::string first = to_json(classify(b.spec, b.bundle, {})).dump(2);
  const std::string second = to_json(classify(b.spec, b.bundle, {})).dump(2);
  o.require(first == second, "reports differ");
  o.require(first == to_json(b.report).dump(2), "report differs from the first run");
  if (o.ok) o.detail = std::to_string(first.size()) + " bytes, identical";
  return o;
}

}  // namespace

int main() {
  const Metric bardeen = load("bardeen");
  const Metric rn = load("reissner_nordstrom");
  const Metric sch = load("schwarzschild");
  const Metric flat = load("minkowski");

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"component regression against the printed tables", [&] { return component_regression(bardeen); }},
      {"Roter decomposition and its coefficients", [&] { return roter(bardeen); }},
      {"Ein(2) with beta, not Einstein", [&] { return ein2(bardeen); }},
      {"pseudosymmetry suite", [&] { return pseudosymmetry(bardeen); }},
      {"C.R - R.C relations", [&] { return difference_tensor(bardeen); }},
      {"recurrence: special recurrent like, weakly generalized, not recurrent", [&] { return recurrence(bardeen); }},
      {"conformal 2-forms recurrent, curvature 2-forms not", [&] { return conformal_forms(bardeen); }},
      {"compatibility and negative structures", [&] { return compatibility(bardeen); }},
      {"Bardeen vs Reissner-Nordstrom comparison", [&] { return comparison(bardeen, rn); }},
      {"controls: Minkowski, Schwarzschild, e -> 0", [&] { return controls(flat, sch, bardeen); }},
      {"oracle equivalence of products and curvature", [&] { return oracle_equivalence(bardeen); }},
      {"deterministic reports", [&] { return determinism(bardeen); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw: ") + e.what();
    }
    if (!o.ok) ++failed;
    std::printf("%s %2zu. %s%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
