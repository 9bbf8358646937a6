#pragma once

// Published closed forms for the Bardeen builtin, transcribed verbatim
// (including their typos) so they can be regression-checked against the
// engine. Expressions use rho (= r) and rho1 (= sqrt(e^2 + r^2)) and the
// symbols M, e, theta, Lambda.

#include <string>
#include <vector>

#include "curvx/classify.hpp"

namespace curvx {

/// Parses a closed form and expands rho, rho1.
[[nodiscard]] Expr bardeen_closed_form(std::string_view text);

struct ReferenceForm {
  std::string label;
  /// One expression per fitted coefficient; "" leaves that slot unchecked.
  std::vector<std::string> coefficients;
};

/// A published claim about one structure.
struct ReferenceClaim {
  std::string structure;
  Verdict expected;
  std::vector<ReferenceForm> forms;
};

[[nodiscard]] const std::vector<ReferenceClaim>& bardeen_claims();

/// One printed component, indices 1-based as printed.
struct ReferenceEntry {
  std::string group;
  std::string tensor;
  std::vector<int> index;
  std::string value;
};

/// Tensor names used by the entries: Gamma, R, S, kappa, L1 (g∧g), L2 (g∧S),
/// L3 (S∧S), C, nablaR, nablaC, R.C, C.R, Q(g,R), Q(S,R), Q(g,C), Q(S,C),
/// W.R, K.R, T, R.T, Q(g,T), C.T.
[[nodiscard]] const std::vector<ReferenceEntry>& bardeen_tables();

}  // namespace curvx
