#include "curvx/report.hpp"

#include <cmath>
#include <sstream>

namespace curvx {

namespace {

using nlohmann::json;

json number(Real v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

json numbers(const std::vector<Real>& v) {
  json out = json::array();
  for (Real x : v) out.push_back(number(x));
  return out;
}

std::string text(Real v) {
  std::ostringstream os;
  os.precision(6);
  os << static_cast<double>(v);
  return os.str();
}

std::string one_based(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i + 1);
  return s;
}

// Markdown table cells cannot hold a bare '|'.
std::string cell(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string match_text(const std::optional<bool>& m) {
  if (!m) return "";
  return *m ? "match" : "mismatch";
}

std::string verdict_list(const std::vector<Verdict>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += verdict_name(v[i]);
  }
  return s;
}

json row_json(const ComparisonRow& r) {
  json first = json::array(), second = json::array();
  for (Verdict v : r.first) first.push_back(std::string(verdict_name(v)));
  for (Verdict v : r.second) second.push_back(std::string(verdict_name(v)));
  return {{"label", r.label}, {"structures", r.structures}, {"first", first}, {"second", second},
          {"reproduced", r.reproduced}};
}

}  // namespace

json to_json(const StructureReport& report) {
  json params = json::object();
  for (const auto& [k, v] : report.params) params[k] = number(v);
  json structures = json::array();
  for (const auto& s : report.structures) {
    json coefficients = json::array();
    for (std::size_t i = 0; i < s.fit.points.size(); ++i) {
      const PointFit& p = s.fit.points[i];
      if (p.degenerate || p.values.empty()) continue;
      coefficients.push_back({{"point", numbers(report.points[i])}, {"values", numbers(p.values)}});
    }
    json entry = {{"name", s.name},
                  {"verdict", std::string(verdict_name(s.fit.verdict))},
                  {"labels", s.fit.labels},
                  {"coefficients", coefficients},
                  {"residual", number(s.fit.residual)},
                  {"paper_form_match", s.reference_match ? json(*s.reference_match) : json(nullptr)}};
    if (s.fit.witness >= 0) entry["witness"] = s.fit.witness;
    if (s.fit.reduced) entry["reduced"] = true;
    if (!s.note.empty()) entry["note"] = s.note;
    structures.push_back(std::move(entry));
  }
  return {{"metric", report.metric},
          {"params", params},
          {"seed", report.seed},
          {"lambda", number(report.lambda)},
          {"tol", number(report.tol)},
          {"coords", report.coords},
          {"flat", report.flat},
          {"structures", structures},
          {"discrepancies", report.discrepancies}};
}

std::string to_markdown(const StructureReport& report) {
  std::ostringstream os;
  os << "# Curvature structures of " << report.metric << "\n\n";
  os << "Parameters:";
  for (const auto& [k, v] : report.params) os << " " << k << " = " << text(v) << ";";
  os << " Lambda = " << text(report.lambda) << ". Seed " << report.seed << ", " << report.points.size()
     << " sample points, tolerance " << text(report.tol) << ".\n\n";
  if (report.flat) os << "The Riemann tensor vanishes identically, so every structure is degenerate.\n\n";
  os << "| structure | verdict | residual | coefficients at the first point | closed form | note |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const auto& s : report.structures) {
    std::string coeffs;
    for (const auto& p : s.fit.points) {
      if (p.degenerate || p.values.empty()) continue;
      for (std::size_t k = 0; k < p.values.size() && k < s.fit.labels.size(); ++k) {
        if (k) coeffs += ", ";
        coeffs += s.fit.labels[k] + " = " + text(p.values[k]);
      }
      break;
    }
    os << "| " << cell(s.name) << " | " << verdict_name(s.fit.verdict) << " | " << text(s.fit.residual) << " | "
       << cell(coeffs) << " | " << match_text(s.reference_match) << " | " << cell(s.note) << " |\n";
  }
  if (!report.discrepancies.empty()) {
    os << "\n## Discrepancies\n\n";
    for (const auto& d : report.discrepancies) os << "- " << d << "\n";
  }
  return os.str();
}

json to_json(const Comparison& c) {
  json sim = json::array(), dis = json::array();
  for (const auto& r : c.similarities) sim.push_back(row_json(r));
  for (const auto& r : c.dissimilarities) dis.push_back(row_json(r));
  return {{"first", c.first},
          {"second", c.second},
          {"shared_holds", c.shared_holds},
          {"shared_fails", c.shared_fails},
          {"differing", c.differing},
          {"similarities", sim},
          {"dissimilarities", dis},
          {"reproduces_reference", c.reproduces_reference()}};
}

std::string to_markdown(const Comparison& c) {
  std::ostringstream os;
  os << "# " << c.first << " vs " << c.second << "\n\n";
  const auto rows = [&](const char* title, const std::vector<ComparisonRow>& rs) {
    os << "## " << title << "\n\n| property | " << c.first << " | " << c.second << " | reproduced |\n|---|---|---|---|\n";
    for (const auto& r : rs)
      os << "| " << cell(r.label) << " | " << verdict_list(r.first) << " | " << verdict_list(r.second) << " | "
         << (r.reproduced ? "yes" : "no") << " |\n";
    os << "\n";
  };
  rows("Similarities", c.similarities);
  rows("Dissimilarities", c.dissimilarities);
  const auto list = [&](const char* title, const std::vector<std::string>& names) {
    os << "## " << title << " (" << names.size() << ")\n\n";
    for (const auto& n : names) os << "- " << n << "\n";
    os << "\n";
  };
  list("Holds for both", c.shared_holds);
  list("Fails for both", c.shared_fails);
  list("Differing verdicts", c.differing);
  os << (c.reproduces_reference() ? "All reference rows reproduced.\n" : "Some reference rows are not reproduced.\n");
  return os.str();
}

json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"group", c.group}, {"name", c.name}, {"status", std::string(status_name(c.status))}};
    if (!c.printed.empty()) e["printed"] = c.printed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (c.engine_value) e["engine_value"] = number(*c.engine_value);
    if (c.printed_value) e["printed_value"] = number(*c.printed_value);
    if (c.oracle_value) e["oracle_value"] = number(*c.oracle_value);
    checks.push_back(std::move(e));
  }
  return {{"metric", r.metric},
          {"summary",
           {{"pass", r.count(CheckStatus::Pass)},
            {"flag", r.count(CheckStatus::Flag)},
            {"error", r.count(CheckStatus::Error)},
            {"table_entries", r.table_entries()},
            {"table_matches", r.table_matches()}}},
          {"checks", checks}};
}

std::string to_markdown(const VerifyReport& r) {
  std::ostringstream os;
  os << "# Verification of " << r.metric << "\n\n";
  os << r.count(CheckStatus::Pass) << " pass, " << r.count(CheckStatus::Flag) << " flagged, "
     << r.count(CheckStatus::Error) << " errors.";
  if (r.table_entries() > 0) os << " Table entries matching: " << r.table_matches() << " of " << r.table_entries() << ".";
  os << "\n\n| group | check | status | engine | printed | oracle | detail |\n|---|---|---|---|---|---|---|\n";
  for (const auto& c : r.checks) {
    const auto opt = [](const std::optional<Real>& v) { return v ? text(*v) : std::string(); };
    os << "| " << cell(c.group) << " | " << cell(c.name) << " | " << status_name(c.status) << " | "
       << opt(c.engine_value) << " | " << opt(c.printed_value) << " | " << opt(c.oracle_value) << " | "
       << cell(c.detail) << " |\n";
  }
  return os.str();
}

json components_json(const std::string& tensor, const Tensor<Expr>& t, const std::optional<Binding>& at) {
  std::optional<Evaluator> ev;
  if (at) ev.emplace(*at);
  json entries = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is_zero()) continue;
    std::vector<int> idx = t.multi_index(i);
    for (int& k : idx) ++k;
    json e = {{"idx", idx}, {"expr", to_string(t[i])}};
    if (ev) e["value"] = number((*ev)(t[i]));
    entries.push_back(std::move(e));
  }
  return {{"tensor", tensor}, {"index_base", 1}, {"entries", entries}};
}

std::string components_markdown(const std::string& tensor, const Tensor<Expr>& t, const std::optional<Binding>& at) {
  std::optional<Evaluator> ev;
  if (at) ev.emplace(*at);
  std::ostringstream os;
  os << "# " << tensor << "\n\nNonzero components, indices from 1.\n\n";
  os << (ev ? "| index | expression | value |\n|---|---|---|\n" : "| index | expression |\n|---|---|\n");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].is_zero()) continue;
    os << "| " << (t.rank() == 0 ? std::string("-") : one_based(t.multi_index(i))) << " | `" << to_string(t[i]) << "`";
    if (ev) os << " | " << text((*ev)(t[i]));
    os << " |\n";
  }
  return os.str();
}

}  // namespace curvx
