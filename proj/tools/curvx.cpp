// curvx: components, classify, verify and compare from the command line.
//
// Exit codes: 0 success, 1 domain or verification error, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "curvx/catalog.hpp"
#include "curvx/classify.hpp"
#include "curvx/curvature.hpp"
#include "curvx/errors.hpp"
#include "curvx/report.hpp"
#include "curvx/verify.hpp"

namespace {

using namespace curvx;

constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, Real> parse_assignments(const std::vector<std::string>& items, const char* flag) {
  std::map<std::string, Real> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(std::string(flag) + " expects K=V, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    Real v = 0;
    try {
      v = std::stold(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError(std::string(flag) + " value is not a number: '" + item + "'");
    out[key] = v;
  }
  return out;
}

MetricSpec load(const std::string& id_or_path) {
  const auto ids = builtin_ids();
  if (std::find(ids.begin(), ids.end(), id_or_path) == ids.end() && !std::filesystem::exists(id_or_path)) {
    throw UsageError("'" + id_or_path + "' is neither a builtin metric nor a file");
  }
  return resolve_metric(id_or_path);
}

CurvatureBundle make_bundle(const MetricSpec& spec) {
  return build_bundle(invert_metric(spec.g, spec.coords, spec.ranges), spec.ranges);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write '" + out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

struct Args {
  std::vector<std::string> metrics;
  std::vector<std::string> params;
  std::vector<std::string> point;
  double lambda = 0.0;
  int points = 12;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;
  std::string tensor = "R";
};

ClassifyOptions classify_options(const Args& a) {
  ClassifyOptions o;
  o.points = a.points;
  o.seed = a.seed;
  o.tol = a.tol;
  o.lambda = a.lambda;
  o.params = parse_assignments(a.params, "--param");
  return o;
}

std::string render(const nlohmann::json& j, const std::string& md, const std::string& format) {
  return format == "json" ? j.dump(2) : md;
}

int run_components(const Args& a) {
  const MetricSpec spec = load(a.metrics.front());
  const CurvatureBundle bundle = make_bundle(spec);
  Tensor<Expr> t;
  if (!table_tensor(bundle, a.tensor, t)) {
    std::string known;
    for (const auto& n : bundle_tensor_names()) known += " " + n;
    throw UsageError("unknown tensor '" + a.tensor + "'; known:" + known +
                     " L1 L2 L3, products such as R.C and Q(g,R)");
  }
  std::optional<Binding> at;
  if (!a.point.empty()) {
    const auto overrides = parse_assignments(a.params, "--param");
    for (const auto& [k, v] : overrides) {
      (void)v;
      if (std::find(spec.params.begin(), spec.params.end(), k) == spec.params.end()) throw UnknownSymbolError(k);
    }
    Binding b = spec.parameter_binding(overrides);
    b.set(kLambdaSymbol, static_cast<Real>(a.lambda));
    for (const auto& [k, v] : parse_assignments(a.point, "--point")) {
      if (std::find(spec.coords.begin(), spec.coords.end(), k) == spec.coords.end() && k != kLambdaSymbol &&
          std::find(spec.params.begin(), spec.params.end(), k) == spec.params.end()) {
        throw UnknownSymbolError(k);
      }
      b.set(k, v);
    }
    for (const auto& c : spec.coords)
      if (!b.contains(c)) throw UsageError("--point is missing coordinate '" + c + "'");
    at = b;
  }
  emit(render(components_json(a.tensor, t, at), components_markdown(a.tensor, t, at), a.format), a.out);
  return 0;
}

int run_classify(const Args& a) {
  const MetricSpec spec = load(a.metrics.front());
  const StructureReport r = classify(spec, make_bundle(spec), classify_options(a));
  emit(render(to_json(r), to_markdown(r), a.format), a.out);
  return 0;
}

int run_verify(const Args& a) {
  const MetricSpec spec = load(a.metrics.front());
  VerifyOptions o;
  o.seed = a.seed;
  const VerifyReport r = verify_metric(spec, make_bundle(spec), o);
  emit(render(to_json(r), to_markdown(r), a.format), a.out);
  return r.ok() ? 0 : kDomainFailure;
}

int run_compare(const Args& a) {
  const ClassifyOptions o = classify_options(a);
  std::vector<MetricSpec> specs;
  for (const auto& m : a.metrics) specs.push_back(load(m));
  for (const auto& [k, v] : o.params) {
    (void)v;
    bool known = false;
    for (const auto& spec : specs) known = known || std::find(spec.params.begin(), spec.params.end(), k) != spec.params.end();
    if (!known) throw UnknownSymbolError(k);
  }
  std::vector<StructureReport> reports;
  for (const auto& spec : specs) {
    // parameter overrides apply to whichever metric declares them
    ClassifyOptions own = o;
    own.params.clear();
    for (const auto& [k, v] : o.params)
      if (std::find(spec.params.begin(), spec.params.end(), k) != spec.params.end()) own.params[k] = v;
    reports.push_back(classify(spec, make_bundle(spec), own));
  }
  const Comparison c = compare_metrics(reports[0], reports[1]);
  emit(render(to_json(c), to_markdown(c), a.format), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature tensors and curvature-restricted structures of a metric"};
  app.require_subcommand(1);
  Args a;

  const auto common = [&](CLI::App* sub, bool many_metrics) {
    auto* m = sub->add_option("--metric", a.metrics, "builtin id (" + [] {
      std::string s;
      for (const auto& id : builtin_ids()) s += (s.empty() ? "" : ", ") + id;
      return s;
    }() + ") or DSL file path")->required();
    if (many_metrics) m->expected(2);
    else m->expected(1);
    sub->add_option("--param", a.params, "parameter override K=V (repeatable)");
    sub->add_option("--lambda", a.lambda, "cosmological constant in T")->default_val(0.0);
    sub->add_option("--seed", a.seed, "sampling seed")->default_val(42);
    sub->add_option("--format", a.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}))->default_val("json");
    sub->add_option("--out", a.out, "output path (default stdout)");
  };
  const auto sampling = [&](CLI::App* sub) {
    sub->add_option("--points", a.points, "sample points")->check(CLI::Range(4, 100000))->default_val(12);
    sub->add_option("--tol", a.tol, "residual tolerance")->check(CLI::PositiveNumber)->default_val(1e-9);
  };

  auto* components = app.add_subcommand("components", "print the nonzero components of one tensor");
  common(components, false);
  components->add_option("--tensor", a.tensor, "tensor name, e.g. R, S, C, nablaR, R.C, Q(g,R)")->default_val("R");
  components->add_option("--point", a.point, "coordinate value K=V for numeric values (repeatable)");

  auto* classify_cmd = app.add_subcommand("classify", "decide which curvature structures the metric admits");
  common(classify_cmd, false);
  sampling(classify_cmd);

  auto* verify = app.add_subcommand("verify", "check the engine against printed tables and identities");
  common(verify, false);

  auto* compare = app.add_subcommand("compare", "compare the structures of two metrics");
  common(compare, true);
  sampling(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*components) return run_components(a);
    if (*classify_cmd) return run_classify(a);
    if (*verify) return run_verify(a);
    return run_compare(a);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownSymbolError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
}
