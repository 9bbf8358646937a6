#pragma once

// Immutable symbolic expressions over coordinates and parameters.
//
// Every public constructor returns canonical form: sums and products are
// flattened and sorted, like terms and like bases are merged, constant
// coefficients are exact rationals. Quotients are represented as products
// with negative powers and sqrt as a power with exponent 1/2, so the node
// set after canonicalisation is {constant, symbol, sum, product, power,
// function}.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curvx/errors.hpp"

namespace curvx {

using Real = long double;
using Rational = boost::multiprecision::cpp_rational;

enum class Kind : std::uint8_t { Constant, Symbol, Power, Function, Product, Sum };

enum class Func : std::uint8_t { Sin, Cos, Tan, Cot, Exp, Log, Abs };

[[nodiscard]] std::string_view func_name(Func f) noexcept;

class Expr;

namespace detail {
struct Node;
}

class Expr {
 public:
  /// The constant zero.
  Expr();
  Expr(long long value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const Rational& value);

  [[nodiscard]] static Expr symbol(std::string name);

  [[nodiscard]] Kind kind() const noexcept;
  [[nodiscard]] bool is_constant() const noexcept { return kind() == Kind::Constant; }
  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] bool is_one() const noexcept;

  /// Constant value (Constant) or exponent (Power).
  [[nodiscard]] const Rational& rational() const;
  /// Symbol name.
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] Func func() const;
  /// Children: terms of a sum, factors of a product, {base} of a power, {arg} of a function.
  [[nodiscard]] const std::vector<Expr>& args() const;

  [[nodiscard]] std::uint64_t hash() const noexcept;
  [[nodiscard]] const detail::Node* id() const noexcept { return node_.get(); }
  /// Number of nodes in the tree, counting shared subtrees once per occurrence.
  [[nodiscard]] std::size_t tree_size() const;

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;

  friend struct Builder;
};

[[nodiscard]] Expr add(std::vector<Expr> terms);
[[nodiscard]] Expr mul(std::vector<Expr> factors);
[[nodiscard]] Expr pow(const Expr& base, const Rational& exponent);
[[nodiscard]] Expr apply(Func f, const Expr& arg);

[[nodiscard]] inline Expr sin(const Expr& x) { return apply(Func::Sin, x); }
[[nodiscard]] inline Expr cos(const Expr& x) { return apply(Func::Cos, x); }
[[nodiscard]] inline Expr tan(const Expr& x) { return apply(Func::Tan, x); }
[[nodiscard]] inline Expr cot(const Expr& x) { return apply(Func::Cot, x); }
[[nodiscard]] inline Expr exp(const Expr& x) { return apply(Func::Exp, x); }
[[nodiscard]] inline Expr log(const Expr& x) { return apply(Func::Log, x); }
[[nodiscard]] inline Expr abs(const Expr& x) { return apply(Func::Abs, x); }
[[nodiscard]] inline Expr sqrt(const Expr& x) { return pow(x, Rational(1, 2)); }

[[nodiscard]] Expr operator+(const Expr& a, const Expr& b);
[[nodiscard]] Expr operator-(const Expr& a, const Expr& b);
[[nodiscard]] Expr operator*(const Expr& a, const Expr& b);
[[nodiscard]] Expr operator/(const Expr& a, const Expr& b);
[[nodiscard]] Expr operator-(const Expr& a);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

/// Deterministic total order on canonical expressions (<0, 0, >0).
[[nodiscard]] int compare(const Expr& a, const Expr& b);
[[nodiscard]] bool identical(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// Re-canonicalises bottom-up. Idempotent; structurally a no-op on trees
/// produced by the public constructors.
[[nodiscard]] Expr simplify(const Expr& e);

/// Exact partial derivative with respect to the named symbol.
[[nodiscard]] Expr differentiate(const Expr& f, std::string_view var);

/// Replaces every occurrence of symbol `name` with `value`.
[[nodiscard]] Expr substitute(const Expr& f, std::string_view name, const Expr& value);

[[nodiscard]] std::set<std::string> free_symbols(const Expr& e);
[[nodiscard]] bool depends_on(const Expr& e, std::string_view var);

/// DSL text; parse(to_string(e)) reproduces e for canonical e.
[[nodiscard]] std::string to_string(const Expr& e);

// ---------------------------------------------------------------------------
// Evaluation

/// Symbol values for evaluation.
class Binding {
 public:
  Binding() = default;
  Binding(std::initializer_list<std::pair<const std::string, Real>> values) : values_(values) {}

  void set(const std::string& name, Real value) { values_[name] = value; }
  [[nodiscard]] bool contains(const std::string& name) const { return values_.count(name) != 0; }
  [[nodiscard]] Real at(const std::string& name) const;
  [[nodiscard]] const std::map<std::string, Real>& values() const noexcept { return values_; }

 private:
  std::map<std::string, Real> values_;
};

/// Evaluates expressions against one binding, memoising shared subtrees.
/// Not thread safe; use one evaluator per thread.
class Evaluator {
 public:
  explicit Evaluator(Binding binding) : binding_(std::move(binding)) {}

  [[nodiscard]] Real operator()(const Expr& e);
  [[nodiscard]] const Binding& binding() const noexcept { return binding_; }

  /// Magnitude scale of `e`: like evaluation but sums accumulate absolute
  /// values of their terms. Used to judge cancellation to zero.
  [[nodiscard]] Real magnitude(const Expr& e);

 private:
  Real eval(const Expr& e);
  Binding binding_;
  std::unordered_map<const detail::Node*, Real> cache_;
  std::unordered_map<const detail::Node*, Real> magnitude_cache_;
};

[[nodiscard]] Real evaluate(const Expr& e, const Binding& b);

// ---------------------------------------------------------------------------
// Probabilistic identity testing

/// Sampling window per symbol. Symbols without an entry fall back to
/// (0, π) shrunk by a small margin for names starting with "theta"/"th",
/// and [1, 3] otherwise.
class SymbolRanges {
 public:
  void set(const std::string& name, Real lo, Real hi) { ranges_[name] = {lo, hi}; }
  [[nodiscard]] std::pair<Real, Real> at(const std::string& name) const;

 private:
  std::map<std::string, std::pair<Real, Real>> ranges_;
};

/// Deterministic random binding for the given symbols.
[[nodiscard]] Binding sample_binding(const std::set<std::string>& symbols, const SymbolRanges& ranges,
                                     std::uint64_t seed);

/// True iff |f-g| <= 1e-10 (1+|f|+|g|) at `trials` deterministic bindings.
/// Bindings that hit a domain error are resampled; throws DomainError when
/// the retry cap is exhausted.
[[nodiscard]] bool equal_probabilistic(const Expr& f, const Expr& g, int trials, std::uint64_t seed,
                                       const SymbolRanges& ranges = {});

/// True iff `f` cancels to zero (relative to its magnitude scale) at a few
/// random bindings.
[[nodiscard]] bool is_zero_probabilistic(const Expr& f, const SymbolRanges& ranges, std::uint64_t seed = 7,
                                         int trials = 3);

}  // namespace curvx
