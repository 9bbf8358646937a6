#pragma once

#include <memory>
#include <string>
#include <vector>

#include "curvx/expr.hpp"

namespace curvx {
namespace detail {

struct Node {
  Kind kind = Kind::Constant;
  Func func = Func::Sin;
  Rational value;  // constant value or power exponent
  std::string name;
  std::vector<Expr> args;
  std::uint64_t hash = 0;
};

}  // namespace detail

/// Raw node construction. Callers are responsible for canonical form.
struct Builder {
  static Expr make(detail::Node node);
  static Expr constant(const Rational& v);
  static Expr raw_power(const Expr& base, const Rational& exponent);
  static Expr raw_function(Func f, const Expr& arg);
  /// `children` must already be sorted and flattened.
  static Expr raw_product(std::vector<Expr> children);
  static Expr raw_sum(std::vector<Expr> children);
};

[[nodiscard]] bool is_integer(const Rational& q);
[[nodiscard]] std::uint64_t hash_rational(const Rational& q);

}  // namespace curvx
