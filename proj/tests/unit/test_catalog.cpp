#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace curvx;
using namespace testsupport;

TEST_CASE("builtins") {
  const MetricSpec b = builtin("bardeen");
  CHECK(b.dim == 4);
  CHECK(b.defaults.at("M") == 1.0L);
  CHECK(b.defaults.at("e") == 0.5L);
  CHECK(equal_probabilistic(b.g({3, 3}), closed_form("rho^2*sin(theta)^2"), 8, 1, b.ranges));
  CHECK(b.coord_ranges.at("r") == std::pair<Real, Real>(1.5L, 3.0L));

  const MetricSpec m = builtin("minkowski");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(identical(m.g({i, j}), Expr(i != j ? 0 : (i == 0 ? -1 : 1))));

  const MetricSpec rn = builtin("reissner_nordstrom");
  CHECK(identical(rn.g({0, 1}), Expr(-1)));
  CHECK(identical(rn.g({1, 0}), Expr(-1)));
  CHECK(rn.defaults.at("q") == 0.5L);

  CHECK_THROWS_AS((void)builtin("kerr"), Error);
  for (const auto& id : builtin_ids()) CHECK_NOTHROW((void)invert_metric(builtin(id).g, builtin(id).coords));
}

TEST_CASE("DSL reproduces the Bardeen builtin") {
  const std::string text =
      "# hand-written copy\n"
      "dim 4\n"
      "coords t r theta phi\n"
      "params M e\n"
      "range r 1.5 3\n"
      "default e 0.5\n"
      "g[0][0] = -(1 - 2*M*r^2/(e^2+r^2)^(3/2))\n"
      "g[1][1] = 1/(1 - 2*M*r^2/(e^2+r^2)^(3/2))\n"
      "g[2][2] = r^2\n"
      "g[3][3] = r^2*sin(theta)^2   # trailing comment\n";
  const MetricSpec parsed = parse_metric(text);
  const MetricSpec ref = builtin("bardeen");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(equal_probabilistic(parsed.g({i, j}), ref.g({i, j}), 8, 4, ref.ranges));
  CHECK(parsed.defaults.at("e") == 0.5L);
  CHECK(parsed.defaults.at("M") == 1.0L);

  const auto path = std::filesystem::temp_directory_path() / "curvx_bardeen_test.metric";
  std::ofstream(path) << text;
  const MetricSpec loaded = load_metric(path);
  CHECK(identical(loaded.g({0, 0}), parsed.g({0, 0})));
  std::filesystem::remove(path);
}

TEST_CASE("DSL errors") {
  const std::string head = "dim 2\ncoords x y\nparams a\n";
  CHECK_NOTHROW((void)parse_metric(head + "g[0][0] = 1\ng[1][1] = a\ng[0][1] = x\ng[1][0] = x\n"));
  CHECK_THROWS_AS((void)parse_metric(head + "g[0][0] = 1\ng[1][1] = 1\ng[0][1] = x\ng[1][0] = y\n"), ParseError);
  CHECK_THROWS_AS((void)parse_metric(head + "g[0][0] = 1\ng[0][0] = 1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_metric(head), SingularMetricError);
  CHECK_THROWS_AS((void)parse_metric(head + "g[0][0] = z\n"), UnknownSymbolError);
  CHECK_THROWS_AS((void)parse_metric(head + "g[2][0] = 1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_metric("coords x y\n"), ParseError);
  try {
    (void)parse_metric(head + "g[0][0] = 1 +* x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 4);
    CHECK(err.column() == 14);
  }
  CHECK_THROWS_AS((void)load_metric("/nonexistent/metric.txt"), Error);
}
