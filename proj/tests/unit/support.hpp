#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "curvx/catalog.hpp"
#include "curvx/curvature.hpp"
#include "curvx/parse.hpp"

namespace testsupport {

using namespace curvx;

/// Closed forms written with rho (= r) and rho1 (= sqrt(e^2 + r^2)).
inline Expr closed_form(const std::string& text) {
  const Expr raw = parse_expr(text, {"M", "e", "r", "rho", "rho1", "theta", "m", "q", "Lambda"});
  const Expr r = Expr::symbol("r");
  const Expr rho1 = sqrt(pow(Expr::symbol("e"), Rational(2)) + pow(r, Rational(2)));
  return substitute(substitute(raw, "rho1", rho1), "rho", r);
}

inline const CurvatureBundle& bundle(const std::string& id) {
  static std::map<std::string, CurvatureBundle> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    const MetricSpec s = builtin(id);
    it = cache.emplace(id, build_bundle(invert_metric(s.g, s.coords, s.ranges), s.ranges)).first;
  }
  return it->second;
}

inline const SymbolRanges& ranges(const std::string& id) {
  static std::map<std::string, SymbolRanges> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, builtin(id).ranges).first;
  return it->second;
}

inline Binding bardeen_point(Real r, Real theta, Real M = 1.0L, Real e = 0.5L) {
  return Binding{{"t", 0.0L}, {"r", r}, {"theta", theta}, {"phi", 0.0L}, {"M", M}, {"e", e}};
}

inline bool close(Real a, Real b, Real rel) { return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)); }

}  // namespace testsupport
