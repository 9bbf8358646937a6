#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "curvx/tensor.hpp"

namespace curvx {

struct MetricSpec {
  std::string id;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<std::string> params;
  /// Sampling windows for coordinates and parameters.
  SymbolRanges ranges;
  std::map<std::string, std::pair<Real, Real>> coord_ranges;
  std::map<std::string, Real> defaults;
  Tensor<Expr> g;
  std::string note;

  /// Parameter defaults, overridden by `overrides`.
  [[nodiscard]] Binding parameter_binding(const std::map<std::string, Real>& overrides = {}) const;
  [[nodiscard]] std::set<std::string> symbols() const;
};

[[nodiscard]] std::vector<std::string> builtin_ids();

/// bardeen, reissner_nordstrom, schwarzschild, minkowski.
[[nodiscard]] MetricSpec builtin(std::string_view id);

/// Parses the metric DSL:
///
///   dim 4
///   coords t r theta phi
///   params M e
///   range r 3/2 3          (optional, coordinates or parameters)
///   default M 1            (optional, parameters)
///   g[0][0] = -(1 - 2*M/r)
///
/// Indices are 0-based; the mirror entry is filled automatically. '#'
/// starts a comment.
[[nodiscard]] MetricSpec parse_metric(std::string_view text, std::string id = "<input>");

[[nodiscard]] MetricSpec load_metric(const std::filesystem::path& path);

/// Builtin id or DSL file path.
[[nodiscard]] MetricSpec resolve_metric(const std::string& id_or_path);

}  // namespace curvx
