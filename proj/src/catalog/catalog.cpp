#include "curvx/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "curvx/parse.hpp"

namespace curvx {

namespace {

constexpr std::string_view kBardeen = R"(# Bardeen regular black hole
dim 4
coords t r theta phi
params M e
range r 3/2 3
range theta 3/10 pi-3/10
range M 1/2 3/2
range e 1/4 3/4
default M 1
default e 1/2
g[0][0] = -(1 - 2*M*r^2/(e^2+r^2)^(3/2))
g[1][1] = (1 - 2*M*r^2/(e^2+r^2)^(3/2))^(-1)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)";

constexpr std::string_view kReissnerNordstrom = R"(# Reissner-Nordstrom in ingoing form
dim 4
coords t r theta phi
params m q
range r 2 4
range theta 3/10 pi-3/10
range m 1/2 3/2
range q 1/4 3/4
default m 1
default q 1/2
g[0][0] = -(1 - 2*m/r + q^2/r^2)
g[0][1] = -1
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)";

constexpr std::string_view kSchwarzschild = R"(# Schwarzschild
dim 4
coords t r theta phi
params M
range r 5/2 5
range theta 3/10 pi-3/10
range M 1/2 1
default M 1
g[0][0] = -(1 - 2*M/r)
g[1][1] = (1 - 2*M/r)^(-1)
g[2][2] = r^2
g[3][3] = r^2*sin(theta)^2
)";

constexpr std::string_view kMinkowski = R"(# Minkowski
dim 4
coords t x y z
params
g[0][0] = -1
g[1][1] = 1
g[2][2] = 1
g[3][3] = 1
)";

std::vector<std::string> split_words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Real parse_number(const std::string& text, int line) {
  char* end = nullptr;
  const Real v = std::strtold(text.c_str(), &end);
  if (end != text.c_str() && *end == '\0') return v;
  try {
    const Expr e = parse_expr(text, {"pi"}, line);
    return evaluate(e, {{"pi", std::numbers::pi_v<Real>}});
  } catch (const Error&) {
    throw ParseError("expected a number, got '" + text + "'", line, 1);
  }
}

void validate_name(const std::string& name, int line) {
  if (!is_identifier(name)) throw ParseError("'" + name + "' is not a valid name", line, 1);
  if (is_reserved_name(name)) throw ParseError("'" + name + "' is a reserved function name", line, 1);
}

}  // namespace

Binding MetricSpec::parameter_binding(const std::map<std::string, Real>& overrides) const {
  Binding b;
  for (const auto& p : params) {
    auto it = overrides.find(p);
    b.set(p, it != overrides.end() ? it->second : defaults.at(p));
  }
  return b;
}

std::set<std::string> MetricSpec::symbols() const {
  std::set<std::string> s(coords.begin(), coords.end());
  s.insert(params.begin(), params.end());
  return s;
}

std::vector<std::string> builtin_ids() { return {"bardeen", "reissner_nordstrom", "schwarzschild", "minkowski"}; }

MetricSpec builtin(std::string_view id) {
  MetricSpec spec;
  if (id == "bardeen") {
    spec = parse_metric(kBardeen, "bardeen");
    spec.note = "Bardeen regular black hole, diagonal static form";
  } else if (id == "reissner_nordstrom") {
    spec = parse_metric(kReissnerNordstrom, "reissner_nordstrom");
    spec.note = "Reissner-Nordstrom with the cross term -2 dt dr";
  } else if (id == "schwarzschild") {
    spec = parse_metric(kSchwarzschild, "schwarzschild");
    spec.note = "Schwarzschild, the e -> 0 limit of Bardeen";
  } else if (id == "minkowski") {
    spec = parse_metric(kMinkowski, "minkowski");
    spec.note = "flat control";
  } else {
    throw Error("unknown builtin metric '" + std::string(id) + "'");
  }
  return spec;
}

MetricSpec parse_metric(std::string_view text, std::string id) {
  MetricSpec spec;
  spec.id = std::move(id);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int header = 0;  // number of dim/coords/params lines seen, in order
  std::set<std::string> allowed;
  std::vector<std::vector<char>> assigned;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words.front();
    if (header == 0) {
      if (key != "dim" || words.size() != 2) throw ParseError("first line must be 'dim <n>'", line_no, 1);
      spec.dim = static_cast<int>(parse_number(words[1], line_no));
      if (spec.dim < 1 || spec.dim > 8 || static_cast<Real>(spec.dim) != parse_number(words[1], line_no)) {
        throw ParseError("dimension must be an integer between 1 and 8", line_no, 5);
      }
      header = 1;
      continue;
    }
    if (header == 1) {
      if (key != "coords") throw ParseError("second line must be 'coords <names>'", line_no, 1);
      if (static_cast<int>(words.size()) - 1 != spec.dim) {
        throw ParseError("expected " + std::to_string(spec.dim) + " coordinate names", line_no, 1);
      }
      for (std::size_t i = 1; i < words.size(); ++i) {
        validate_name(words[i], line_no);
        if (!allowed.insert(words[i]).second) throw ParseError("duplicate name '" + words[i] + "'", line_no, 1);
        spec.coords.push_back(words[i]);
      }
      header = 2;
      continue;
    }
    if (header == 2) {
      if (key != "params") throw ParseError("third line must be 'params <names>'", line_no, 1);
      for (std::size_t i = 1; i < words.size(); ++i) {
        validate_name(words[i], line_no);
        if (!allowed.insert(words[i]).second) throw ParseError("duplicate name '" + words[i] + "'", line_no, 1);
        spec.params.push_back(words[i]);
        spec.defaults[words[i]] = 1.0L;
        spec.ranges.set(words[i], 0.5L, 1.5L);
      }
      header = 3;
      spec.g = Tensor<Expr>(spec.dim, 2);
      assigned.assign(static_cast<std::size_t>(spec.dim), std::vector<char>(static_cast<std::size_t>(spec.dim), 0));
      continue;
    }
    if (key == "range") {
      if (words.size() != 4) throw ParseError("expected 'range <name> <lo> <hi>'", line_no, 1);
      if (allowed.count(words[1]) == 0) throw UnknownSymbolError(words[1]);
      const Real lo = parse_number(words[2], line_no);
      const Real hi = parse_number(words[3], line_no);
      if (!(lo < hi)) throw ParseError("empty range for '" + words[1] + "'", line_no, 1);
      spec.ranges.set(words[1], lo, hi);
      continue;
    }
    if (key == "default") {
      if (words.size() != 3) throw ParseError("expected 'default <param> <value>'", line_no, 1);
      if (spec.defaults.count(words[1]) == 0) throw UnknownSymbolError(words[1]);
      spec.defaults[words[1]] = parse_number(words[2], line_no);
      continue;
    }
    // g[i][j] = expression
    const std::size_t eq = line.find('=');
    const std::size_t first = line.find_first_not_of(" \t");
    if (line.compare(first, 2, "g[") != 0 || eq == std::string::npos) {
      throw ParseError("expected 'g[i][j] = <expression>'", line_no, static_cast<int>(first) + 1);
    }
    int i = -1;
    int j = -1;
    char tail = 0;
    const std::string lhs = line.substr(first, eq - first);
    if (std::sscanf(lhs.c_str(), "g[%d][%d] %c", &i, &j, &tail) != 2) {
      throw ParseError("malformed component index", line_no, static_cast<int>(first) + 1);
    }
    if (i < 0 || j < 0 || i >= spec.dim || j >= spec.dim) {
      throw ParseError("component index out of range", line_no, static_cast<int>(first) + 1);
    }
    const Expr value = parse_expr(std::string_view(line).substr(eq + 1), allowed, line_no, static_cast<int>(eq) + 1);
    auto& here = assigned[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto& mirror = assigned[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (here) throw ParseError("duplicate assignment of g[" + std::to_string(i) + "][" + std::to_string(j) + "]", line_no, 1);
    if (mirror && !identical(spec.g({j, i}), value)) {
      throw ParseError("g[" + std::to_string(i) + "][" + std::to_string(j) + "] disagrees with its mirror entry", line_no, 1);
    }
    here = 1;
    spec.g({i, j}) = value;
    spec.g({j, i}) = value;
  }
  if (header < 3) throw ParseError("missing dim/coords/params header", line_no + 1, 1);

  for (const auto& c : spec.coords) spec.coord_ranges[c] = spec.ranges.at(c);

  // Invertibility probe: coordinates in range, parameters at their defaults.
  SymbolRanges probe = spec.ranges;
  for (const auto& [p, v] : spec.defaults) probe.set(p, v, v);
  const Expr det = determinant(spec.g);
  int regular = 0;
  for (std::uint64_t k = 0; k < 4; ++k) {
    try {
      const Real d = evaluate(det, sample_binding(spec.symbols(), probe, 0xD15C0ULL + k));
      if (std::fabs(d) > 1e-12L) ++regular;
    } catch (const DomainError&) {
    }
  }
  if (regular == 0) throw SingularMetricError("metric '" + spec.id + "' is singular at every probe point");
  return spec;
}

MetricSpec load_metric(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metric file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metric(buf.str(), path.string());
}

MetricSpec resolve_metric(const std::string& id_or_path) {
  for (const auto& id : builtin_ids()) {
    if (id == id_or_path) return builtin(id);
  }
  return load_metric(id_or_path);
}

}  // namespace curvx
