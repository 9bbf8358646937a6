#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvx/classify.hpp"
#include "curvx/reference.hpp"

namespace curvx {

namespace {

// Relative agreement required between a fitted coefficient and a closed form.
constexpr Real kFormTolerance = 1e-8L;

bool is_flat(const CurvatureBundle& b) {
  return std::all_of(b.R.data().begin(), b.R.data().end(), [](const Expr& e) { return e.is_zero(); });
}

std::string format_real(Real v) {
  std::ostringstream os;
  os.precision(6);
  os << static_cast<double>(v);
  return os.str();
}

// Does `form` reproduce the fitted coefficients at every usable point?
// On a mismatch `why` names the first offending point.
bool form_matches(const ReferenceForm& form, const SamplePlan& plan, const CoefficientFit& fit, std::string& why) {
  std::vector<Expr> exprs;
  for (const auto& text : form.coefficients) exprs.push_back(text.empty() ? Expr() : bardeen_closed_form(text));
  if (exprs.size() != fit.labels.size()) {
    why = "form has " + std::to_string(exprs.size()) + " coefficients, fit has " + std::to_string(fit.labels.size());
    return false;
  }
  for (std::size_t i = 0; i < fit.points.size(); ++i) {
    const PointFit& p = fit.points[i];
    if (p.degenerate) continue;
    std::vector<Real> ref(exprs.size(), 0.0L);
    Real scale = 0.0L;
    try {
      Evaluator ev(plan.points[i].at);
      for (std::size_t k = 0; k < exprs.size(); ++k) {
        if (form.coefficients[k].empty()) continue;
        ref[k] = ev(exprs[k]);
        scale = std::max(scale, std::fabs(ref[k]));
      }
    } catch (const DomainError& e) {
      why = std::string("closed form leaves its domain: ") + e.what();
      return false;
    }
    for (std::size_t k = 0; k < exprs.size(); ++k) scale = std::max(scale, std::fabs(p.values[k]));
    for (std::size_t k = 0; k < exprs.size(); ++k) {
      if (form.coefficients[k].empty()) continue;
      if (!(std::fabs(p.values[k] - ref[k]) <= kFormTolerance * scale)) {
        why = fit.labels[k] + " = " + format_real(p.values[k]) + " but the closed form gives " + format_real(ref[k]) +
              " at point " + std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

void match_reference(const SamplePlan& plan, StructureReport& report) {
  for (const auto& claim : bardeen_claims()) {
    auto it = std::find_if(report.structures.begin(), report.structures.end(),
                           [&](const Structure& s) { return s.name == claim.structure; });
    if (it == report.structures.end()) {
      report.discrepancies.push_back(claim.structure + ": claimed structure is not classified");
      continue;
    }
    Structure& s = *it;
    if (s.fit.verdict != claim.expected) {
      report.discrepancies.push_back(s.name + ": claimed " + std::string(verdict_name(claim.expected)) +
                                     ", computed " + std::string(verdict_name(s.fit.verdict)) + " (residual " +
                                     format_real(s.fit.residual) + ")");
    }
    if (claim.forms.empty() || s.fit.verdict != Verdict::Holds) continue;
    if (s.fit.reduced) {
      // coefficients are not unique, so there is nothing to compare
      continue;
    }
    bool any = false;
    for (const auto& form : claim.forms) {
      std::string why;
      if (form_matches(form, plan, s.fit, why)) {
        any = true;
      } else {
        report.discrepancies.push_back(s.name + ": " + form.label + " does not match: " + why);
      }
    }
    s.reference_match = any;
  }
}

}  // namespace

const Structure* StructureReport::find(std::string_view name) const {
  for (const auto& s : structures)
    if (s.name == name) return &s;
  return nullptr;
}

Verdict StructureReport::verdict(std::string_view name) const {
  const Structure* s = find(name);
  if (!s) throw Error("no structure named '" + std::string(name) + "'");
  return s->fit.verdict;
}

StructureReport classify(const MetricSpec& spec, const CurvatureBundle& bundle, const ClassifyOptions& options) {
  if (!(options.tol > 0.0L)) throw Error("tolerance must be positive");
  const SamplePlan plan = make_sample_plan(spec, bundle, options);

  StructureReport report;
  report.metric = spec.id;
  for (const auto& [name, v] : plan.params.values()) report.params[name] = v;
  report.seed = options.seed;
  report.lambda = options.lambda;
  report.tol = options.tol;
  report.coords = plan.coords;
  for (const auto& p : plan.points) report.points.push_back(p.coords);

  const auto append = [&](std::vector<Structure> part) {
    for (auto& s : part) report.structures.push_back(std::move(s));
  };
  append(classify_pseudosymmetries(plan, options.tol));
  append(classify_einstein(plan, options.tol));
  append(classify_roter(plan, options.tol));
  append(classify_recurrence(plan, options.tol));
  append(classify_form_recurrence(plan, options.tol));
  append(classify_ricci_properties(plan, options.tol));
  append(classify_symmetry_forms(plan, options.tol));
  append(classify_T_pseudosymmetry(plan, options.tol));

  report.flat = is_flat(bundle);
  if (report.flat) {
    // Every defining relation collapses to 0 = 0; no coefficient is determined.
    for (auto& s : report.structures) {
      s.fit.verdict = Verdict::Degenerate;
      s.fit.witness = -1;
      s.fit.residual = 0.0L;
      s.note = "flat: the Riemann tensor vanishes identically";
    }
  }

  if (spec.id == "bardeen") match_reference(plan, report);
  return report;
}

}  // namespace curvx
