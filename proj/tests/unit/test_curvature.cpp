#include <doctest.h>

#include "curvx/fd_oracle.hpp"
#include "support.hpp"

using namespace curvx;
using namespace testsupport;

namespace {

const char* const kAllMetrics[] = {"bardeen", "reissner_nordstrom", "schwarzschild", "minkowski"};

FdOracle oracle(const std::string& id) {
  const auto& b = bundle(id);
  return FdOracle(b.metric.g, b.metric.coords);
}

Binding point_for(const std::string& id, std::uint64_t seed) {
  const MetricSpec s = builtin(id);
  SymbolRanges r = s.ranges;
  for (const auto& [p, v] : s.defaults) r.set(p, v, v);
  return sample_binding(s.symbols(), r, seed);
}

}  // namespace

TEST_CASE("christoffel: table entries and symmetry") {
  const auto& b = bundle("bardeen");
  const auto& rg = ranges("bardeen");
  CHECK(equal_probabilistic(b.gamma({2, 1, 2}), closed_form("1/rho"), 8, 1, rg));
  CHECK(equal_probabilistic(b.gamma({3, 1, 3}), closed_form("1/rho"), 8, 1, rg));
  CHECK(equal_probabilistic(b.gamma({3, 2, 3}), closed_form("cot(theta)"), 8, 1, rg));
  CHECK(equal_probabilistic(b.gamma({2, 3, 3}), closed_form("-cos(theta)*sin(theta)"), 8, 1, rg));
  CHECK(equal_probabilistic(b.gamma({1, 2, 2}), closed_form("-rho + 2*M*rho^3/rho1^3"), 8, 1, rg));
  for (const char* id : kAllMetrics) {
    const auto& bb = bundle(id);
    for (int h = 0; h < 4; ++h)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(identical(bb.gamma({h, i, j}), bb.gamma({h, j, i})));
  }
  for (const auto& e : bundle("minkowski").gamma.data()) CHECK(e.is_zero());
}

TEST_CASE("christoffel: finite-difference oracle") {
  const auto& b = bundle("bardeen");
  const Binding at = bardeen_point(2.0L, std::numbers::pi_v<Real> / 3);
  const auto fd = oracle("bardeen").christoffel(at);
  Evaluator ev(at);
  CHECK(close(ev(b.gamma({0, 0, 1})), fd({0, 0, 1}), 1e-7L));
  const auto exact = evaluate(b.gamma, ev);
  CHECK(max_abs(exact - fd) <= 1e-7L * max_abs(exact));
}

TEST_CASE("riemann: Bardeen table entries") {
  const auto& b = bundle("bardeen");
  const auto& rg = ranges("bardeen");
  CHECK(equal_probabilistic(b.R({0, 1, 0, 1}), closed_form("M*(15*rho^2*e^2 - 2*rho1^4)/rho1^7"), 8, 3, rg));
  CHECK(equal_probabilistic(b.R({2, 3, 2, 3}), closed_form("2*M*rho^4*sin(theta)^2/rho1^3"), 8, 3, rg));
  CHECK(equal_probabilistic(b.R({0, 2, 0, 2}),
                            closed_form("M*rho^2*(rho1^2 - 3*e^2)*(-2*M*rho^2 + rho1^3)/rho1^8"), 8, 3, rg));
  CHECK(equal_probabilistic(b.R({1, 2, 1, 2}),
                            closed_form("-M*rho^2*(rho1^2 - 3*e^2)/(rho1^2*(-2*M*rho^2 + rho1^3))"), 8, 3, rg));
}

TEST_CASE("riemann: symmetries and first Bianchi for every builtin") {
  for (const char* id : kAllMetrics) {
    const auto& b = bundle(id);
    for (std::uint64_t k = 0; k < 3; ++k) {
      Evaluator ev(point_for(id, k));
      const auto R = evaluate(b.R, ev);
      CHECK(symmetry_violation(R, Symmetry::Riemann) <= 1e-15L * (1 + max_abs(R)));
      CHECK(symmetry_violation(evaluate(b.S, ev), Symmetry::Symmetric) <= 1e-15L * (1 + max_abs(R)));
    }
    for (int h = 0; h < 4; ++h)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k) {
            const Expr cyc = add({b.R({h, i, j, k}), b.R({h, j, k, i}), b.R({h, k, i, j})});
            CHECK(is_zero_probabilistic(cyc, ranges(id)));
          }
  }
}

TEST_CASE("riemann: finite-difference oracle on all components") {
  for (const char* id : {"bardeen", "reissner_nordstrom"}) {
    const auto& b = bundle(id);
    const Binding at = point_for(id, 11);
    Evaluator ev(at);
    const auto exact = evaluate(b.R, ev);
    const auto fd = oracle(id).riemann(at);
    const Real scale = max_abs(exact);
    for (int a = 0; a < 4; ++a)
      for (int c = a + 1; c < 4; ++c)
        for (int x = 0; x < 4; ++x)
          for (int y = x + 1; y < 4; ++y) {
            const Real e = exact({a, c, x, y});
            CHECK(std::fabs(e - fd({a, c, x, y})) <= 1e-6L * std::max(std::fabs(e), 1e-3L * scale));
          }
  }
}

TEST_CASE("ricci family") {
  const auto& b = bundle("bardeen");
  const auto& rg = ranges("bardeen");
  CHECK(equal_probabilistic(b.S({2, 2}), closed_form("-6*M*e^2*rho^2/rho1^5"), 8, 4, rg));
  CHECK(equal_probabilistic(b.S({0, 0}), closed_form("3*M*e^2*(2*rho1^2 - 5*rho^2)*(-2*M*rho^2 + rho1^3)/rho1^10"), 8, 4, rg));
  CHECK(equal_probabilistic(b.kappa, closed_form("6*M*e^2*(5*rho^2 - 4*rho1^2)/rho1^7"), 8, 4, rg));

  const Binding at = bardeen_point(2.0L, 1.0L);
  const Real kappa = evaluate(b.kappa, at);
  CHECK(kappa == doctest::Approx(0.02843).epsilon(1e-3));
  CHECK(close(kappa, oracle("bardeen").scalar(at), 1e-7L));

  CHECK(bundle("reissner_nordstrom").kappa.is_zero());
  for (const auto& e : bundle("schwarzschild").S.data()) CHECK(e.is_zero());

  Evaluator ev(at);
  const auto S = evaluate(b.S, ev);
  const auto S2 = evaluate(b.S2, ev);
  const auto gi = evaluate(b.metric.g_inv, ev);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Real s = 0.0L;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += S({i, k}) * gi({k, l}) * S({l, j});
      CHECK(std::fabs(s - S2({i, j})) <= 1e-15L);
    }
}

TEST_CASE("derived curvatures") {
  const auto& b = bundle("bardeen");
  const auto& rg = ranges("bardeen");
  CHECK(equal_probabilistic(b.C({0, 1, 0, 1}), closed_form("M*rho^2*(3*rho1^2 - 5*rho^2)/rho1^7"), 8, 5, rg));
  const Expr r = Expr::symbol("r");
  const Expr th = Expr::symbol("theta");
  CHECK(equal_probabilistic(b.C({2, 3, 2, 3}), -pow(r, Rational(4)) * pow(sin(th), Rational(2)) * b.C({0, 1, 0, 1}), 8, 5, rg));

  for (const auto* t : {&bundle("minkowski").C, &bundle("minkowski").P, &bundle("minkowski").W, &bundle("minkowski").K}) {
    for (const auto& e : t->data()) CHECK(e.is_zero());
  }
  for (const char* id : kAllMetrics) {
    const auto& bb = bundle(id);
    for (std::uint64_t k = 0; k < 3; ++k) {
      Evaluator ev(point_for(id, 20 + k));
      const auto trace = metric_trace(evaluate(bb.C, ev), evaluate(bb.metric.g_inv, ev), 0, 2);
      CHECK(max_abs(trace) <= 1e-10L);
      CHECK(symmetry_violation(evaluate(bb.W, ev), Symmetry::Riemann) <= 1e-14L);
    }
  }
  CHECK_THROWS_AS((void)derived_curvatures(Tensor<Real>(2, 4), Tensor<Real>(2, 2), 0.0L, Tensor<Real>(2, 2)), ShapeError);
}

TEST_CASE("covariant derivative") {
  const auto& b = bundle("bardeen");
  const auto ng = covariant_derivative(b.metric.g, b.gamma, b.metric.coords);
  for (const auto& e : ng.data()) CHECK(is_zero_probabilistic(e, ranges("bardeen")));
  CHECK(equal_probabilistic(b.nablaR.at(std::vector<int>{1, 2, 2, 3, 3}),
                            closed_form("3*M*rho^5*sin(theta)^2/rho1^5"), 8, 6, ranges("bardeen")));

  // Second Bianchi: cyclic over (derivative slot, third and fourth slots).
  for (std::uint64_t k = 0; k < 10; ++k) {
    Evaluator ev(point_for("bardeen", 40 + k));
    const auto nR = evaluate(b.nablaR, ev);
    const Real scale = max_abs(nR);
    Real worst = 0.0L;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c)
        for (int x = 0; x < 4; ++x)
          for (int y = 0; y < 4; ++y)
            for (int f = 0; f < 4; ++f) {
              const Real s = nR.at(std::vector<int>{a, c, x, y, f}) + nR.at(std::vector<int>{a, c, y, f, x}) +
                             nR.at(std::vector<int>{a, c, f, x, y});
              worst = std::max(worst, std::fabs(s));
            }
    CHECK(worst <= 1e-9L * scale);
  }

  const Binding at = bardeen_point(2.2L, 0.9L);
  Evaluator ev(at);
  const auto exact = evaluate(b.nablaR, ev);
  const auto fd = oracle("bardeen").nabla_riemann(at);
  CHECK(max_abs(exact - fd) <= 1e-6L * max_abs(exact));
}

TEST_CASE("contracted Bianchi: div S = d(kappa)/2") {
  for (const char* id : {"bardeen", "reissner_nordstrom"}) {
    const auto& b = bundle(id);
    for (std::uint64_t k = 0; k < 4; ++k) {
      const Binding at = point_for(id, 60 + k);
      Evaluator ev(at);
      const auto nS = evaluate(b.nablaS, ev);
      const auto gi = evaluate(b.metric.g_inv, ev);
      for (int j = 0; j < 4; ++j) {
        Real div = 0.0L;
        for (int i = 0; i < 4; ++i)
          for (int f = 0; f < 4; ++f) div += gi({i, f}) * nS.at(std::vector<int>{i, j, f});
        const Real dk = ev(differentiate(b.kappa, b.metric.coords[static_cast<std::size_t>(j)]));
        CHECK(std::fabs(div - dk / 2) <= 1e-8L * (1e-3L + std::fabs(dk)));
      }
    }
  }
}

TEST_CASE("stress-energy") {
  const auto& b = bundle("bardeen");
  CHECK(equal_probabilistic(b.T({1, 1}), closed_form("(6*M*e^2 + rho1^5*Lambda)/(rho1^2*(-2*M*rho^2 + rho1^3))"), 8, 7,
                            ranges("bardeen")));
  for (const auto& e : bundle("minkowski").T.data()) {
    CHECK(is_zero_probabilistic(substitute(e, kLambdaSymbol, Expr(0)), {}));
  }
  Binding at = bardeen_point(2.4L, 1.2L);
  at.set(kLambdaSymbol, 0.3L);
  Evaluator ev(at);
  const auto T = evaluate(b.T, ev);
  const auto gi = evaluate(b.metric.g_inv, ev);
  Real tr = 0.0L;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr += gi({i, j}) * T({i, j});
  CHECK(std::fabs(tr - (-ev(b.kappa) + 4 * 0.3L)) <= 1e-10L);
}

TEST_CASE("e -> 0 continuity towards Schwarzschild") {
  const auto& b = bundle("bardeen");
  const auto& s = bundle("schwarzschild");
  Binding sch{{"t", 0.0L}, {"r", 2.6L}, {"theta", 1.0L}, {"phi", 0.0L}, {"M", 1.0L}};
  Evaluator sch_ev(sch);
  const auto ref = evaluate(s.R, sch_ev);
  Real previous = -1.0L;
  for (Real e : {1e-2L, 1e-3L, 1e-4L}) {
    Evaluator ev(bardeen_point(2.6L, 1.0L, 1.0L, e));
    const auto cur = evaluate(b.R, ev);
    const Real delta = max_abs(cur - ref);
    CHECK(delta <= 10 * e * e);
    if (previous > 0) CHECK(delta < previous);
    previous = delta;
  }
  const MetricSpec bs = builtin("bardeen");
  const MetricSpec ss = builtin("schwarzschild");
  for (int i = 0; i < 4; ++i)
    CHECK(equal_probabilistic(substitute(bs.g({i, i}), "e", Expr(0)), ss.g({i, i}), 8, 9, ss.ranges));
}
