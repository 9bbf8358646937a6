#pragma once

// Regression of the engine against printed component tables, plus a few
// identities every metric must satisfy.
//
// A table entry passes when it agrees with the engine under probabilistic
// equality. A disagreeing entry is re-checked against the finite-difference
// oracle: if the oracle sides with the engine the entry is flagged (a typo
// in the table), otherwise the check errors.

#include <optional>
#include <string>
#include <vector>

#include "curvx/catalog.hpp"
#include "curvx/curvature.hpp"

namespace curvx {

enum class CheckStatus { Pass, Flag, Error };

[[nodiscard]] std::string_view status_name(CheckStatus s) noexcept;

struct VerifyCheck {
  std::string group;
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  /// Printed closed form; empty for identities.
  std::string printed;
  std::string detail;
  /// Values at the probe binding, filled for flagged and errored entries.
  std::optional<Real> engine_value;
  std::optional<Real> printed_value;
  std::optional<Real> oracle_value;
};

struct VerifyOptions {
  int trials = 8;
  std::uint64_t seed = 42;
  /// Relative agreement required between engine and oracle.
  Real oracle_tolerance = 1e-6L;
  /// Sample points for the identities.
  int identity_points = 3;
};

struct VerifyReport {
  std::string metric;
  std::vector<VerifyCheck> checks;

  [[nodiscard]] std::size_t count(CheckStatus s) const;
  /// Table entries only.
  [[nodiscard]] std::size_t table_entries() const;
  [[nodiscard]] std::size_t table_matches() const;
  /// Exit status of the verify command: no check errored.
  [[nodiscard]] bool ok() const { return count(CheckStatus::Error) == 0; }
};

/// Group name used for the identity checks.
inline constexpr const char* kIdentityGroup = "identities";

/// Builds the named product or Kulkarni-Nomizu tensor used by the tables
/// (L1, L2, L3, R.C, Q(g,R), ...) or any bundle tensor. Returns false for an
/// unknown name.
[[nodiscard]] bool table_tensor(const CurvatureBundle& b, std::string_view name, Tensor<Expr>& out);

/// Tables are available for the Bardeen builtin; every metric gets the
/// identities.
[[nodiscard]] VerifyReport verify_metric(const MetricSpec& spec, const CurvatureBundle& bundle,
                                         const VerifyOptions& options = {});

}  // namespace curvx
