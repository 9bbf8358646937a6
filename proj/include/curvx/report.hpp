#pragma once

// JSON and Markdown renderings of the classify, compare, verify and
// components outputs.

#include <optional>
#include <string>

#include <json.hpp>

#include "curvx/classify.hpp"
#include "curvx/verify.hpp"

namespace curvx {

[[nodiscard]] nlohmann::json to_json(const StructureReport& report);
[[nodiscard]] std::string to_markdown(const StructureReport& report);

[[nodiscard]] nlohmann::json to_json(const Comparison& comparison);
[[nodiscard]] std::string to_markdown(const Comparison& comparison);

[[nodiscard]] nlohmann::json to_json(const VerifyReport& report);
[[nodiscard]] std::string to_markdown(const VerifyReport& report);

/// Nonzero components with 1-based indices; `at` adds numeric values.
[[nodiscard]] nlohmann::json components_json(const std::string& tensor, const Tensor<Expr>& t,
                                             const std::optional<Binding>& at);
[[nodiscard]] std::string components_markdown(const std::string& tensor, const Tensor<Expr>& t,
                                              const std::optional<Binding>& at);

}  // namespace curvx
