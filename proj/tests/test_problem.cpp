#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>

#include "bhse/problem.hpp"
#include "doctest.h"

using namespace bhse;

namespace {

// (1+x)e^{-x}: value 1 and slope 0 at the corner, decayed by x = 20.
IBVPData make_data(double s, double p) {
  IBVPData d;
  d.q0 = GridFunction::sampled(0.0, 0.02, 1001, Domain::half_line, [](double x) {
    return cplx((1.0 + x) * std::exp(-x), 0.0);
  });
  d.g0 = TimeSignal::sampled(0.0, 1e-3, 301,
                             [](double t) { return cplx(std::cos(t), 0.0); });
  d.g1 = TimeSignal::sampled(0.0, 1e-3, 301,
                             [](double t) { return cplx(std::sin(t), 0.0); });
  d.s = s;
  d.p = p;
  d.T = 0.25;
  return d;
}

bool all_pass(const std::vector<HypothesisCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string failing_detail(const std::vector<HypothesisCheck>& checks,
                           const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name && !c.pass) return c.detail;
  return {};
}

}  // namespace

TEST_CASE("reference configurations validate cleanly") {
  CHECK(all_pass(validate_problem(make_data(1.0, 2.0), true)));
  CHECK(all_pass(validate_problem(make_data(1.0, 2.0), false)));
  CHECK(all_pass(validate_problem(make_data(4.0, 2.0), true)));
  CHECK(all_pass(validate_problem(make_data(0.25, 2.0), false)));
  CHECK_NOTHROW(require_valid(make_data(1.0, 2.0), true));
}

TEST_CASE("check list carries fixed names in a fixed order") {
  const auto nl = validate_problem(make_data(1.0, 2.0), true);
  REQUIRE(nl.size() == 6);
  CHECK(nl[0].name == "s range");
  CHECK(nl[1].name == "nonlinearity power");
  CHECK(nl[2].name == "p positive");
  CHECK(nl[3].name == "horizon");
  CHECK(nl[4].name == "data coverage");
  CHECK(nl[5].name == "corner compatibility");

  const auto lin = validate_problem(make_data(1.0, 2.0), false);
  REQUIRE(lin.size() == 5);
  CHECK(lin[1].name == "p positive");
}

TEST_CASE("excluded regularity exponents are rejected with quoted clauses") {
  CHECK(failing_detail(validate_problem(make_data(1.5, 2.0), true), "s range") ==
        "s = 3/2 is excluded");
  CHECK(failing_detail(validate_problem(make_data(1.5, 2.0), false), "s range") ==
        "s = 3/2 is excluded");
  CHECK(failing_detail(validate_problem(make_data(0.5, 2.0), false), "s range") ==
        "s = 1/2 is excluded");
  // open lower endpoint on the nonlinear side
  CHECK(failing_detail(validate_problem(make_data(0.5, 2.0), true), "s range")
            .find("(1/2, 9/2)") != std::string::npos);
  CHECK(failing_detail(validate_problem(make_data(4.5, 2.0), true), "s range")
            .find("(1/2, 9/2)") != std::string::npos);
  CHECK(failing_detail(validate_problem(make_data(4.5, 2.0), false), "s range")
            .find("[0, 9/2)") != std::string::npos);
  // linear solver admits low exponents the nonlinear theory excludes
  CHECK(all_pass(validate_problem(make_data(0.0, 2.0), false)));
  CHECK(!all_pass(validate_problem(make_data(0.0, 2.0), true)));
}

TEST_CASE("nonlinearity power follows the integer-s branch") {
  auto clause = [](double s, double p) {
    return failing_detail(validate_problem(make_data(s, p), true),
                          "nonlinearity power");
  };
  // odd-integer p needs p >= s
  CHECK(clause(4.0, 3.0).find("p >= s") != std::string::npos);
  CHECK(clause(3.0, 3.0).empty());
  CHECK(clause(1.0, 3.0).empty());
  // non-integer p needs floor(p) >= s-1
  CHECK(clause(4.0, 3.5).empty());
  CHECK(clause(4.0, 2.5).find("floor(p) >= s-1") != std::string::npos);
  // even-integer p is polynomial in q, conj(q): no constraint
  CHECK(clause(4.0, 2.0).empty());
  CHECK(clause(4.0, 4.0).empty());
}

TEST_CASE("nonlinearity power follows the non-integer-s branch") {
  auto clause = [](double s, double p) {
    return failing_detail(validate_problem(make_data(s, p), true),
                          "nonlinearity power");
  };
  // odd-integer p needs p > s strictly
  CHECK(clause(2.5, 3.0).empty());
  CHECK(clause(3.5, 3.0).find("p > s") != std::string::npos);
  // non-integer p needs floor(p) >= floor(s)
  CHECK(clause(2.5, 2.2).empty());
  CHECK(clause(3.5, 2.2).find("floor(p) >= floor(s)") != std::string::npos);
  CHECK(clause(3.5, 2.0).empty());
}

TEST_CASE("corner mismatches become compatibility failures") {
  auto bad = make_data(1.0, 2.0);
  bad.g0 = TimeSignal::sampled(0.0, 1e-3, 301,
                               [](double t) { return cplx(1.0 + t, 0.5); });
  const auto checks = validate_problem(bad, true);
  CHECK(!failing_detail(checks, "corner compatibility").empty());
  CHECK_THROWS_AS(require_valid(bad, true), CompatibilityError);

  // below s = 1/2 no corner condition binds on the linear side
  bad.s = 0.25;
  CHECK(all_pass(validate_problem(bad, false)));

  // slope condition engages above s = 3/2
  auto slope = make_data(2.0, 2.0);
  slope.g1 = TimeSignal::sampled(0.0, 1e-3, 301,
                                 [](double t) { return cplx(1.0, t); });
  CHECK(!failing_detail(validate_problem(slope, true), "corner compatibility")
             .empty());
  slope.s = 1.0;
  CHECK(all_pass(validate_problem(slope, true)));
}

TEST_CASE("structural defects raise config errors") {
  auto short_g = make_data(1.0, 2.0);
  short_g.g1 = TimeSignal::sampled(0.0, 1e-3, 101,
                                   [](double t) { return cplx(std::sin(t), 0.0); });
  CHECK(failing_detail(validate_problem(short_g, true), "data coverage") ==
        "boundary signals end before T");
  CHECK_THROWS_AS(require_valid(short_g, true), ConfigError);

  auto empty = make_data(1.0, 2.0);
  empty.q0 = GridFunction{};
  CHECK(!failing_detail(validate_problem(empty, true), "data coverage").empty());

  auto flat = make_data(1.0, 2.0);
  flat.T = 0.0;
  CHECK(!failing_detail(validate_problem(flat, true), "horizon").empty());
  CHECK_THROWS_AS(require_valid(flat, true), ConfigError);

  auto negp = make_data(1.0, -1.0);
  CHECK(!failing_detail(validate_problem(negp, true), "p positive").empty());

  CHECK_THROWS_AS(require_valid(make_data(1.5, 2.0), true), ConfigError);
}
