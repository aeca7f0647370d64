#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bhse/grid.hpp"

using namespace bhse;

TEST_CASE("grid constructor invariants") {
  CHECK_THROWS_AS(GridFunction({}, 0.0, 0.1, Domain::whole_line), DomainError);
  CHECK_THROWS_AS(GridFunction({{1.0, 0.0}}, 0.0, -0.1, Domain::whole_line),
                  DomainError);
  CHECK_THROWS_AS(GridFunction({{1.0, 0.0}, {2.0, 0.0}}, 1.0, 0.1,
                               Domain::half_line),
                  DomainError);
  GridFunction g({{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, 0.0, 0.5,
                 Domain::half_line);
  CHECK(g.x(2) == doctest::Approx(1.0));
  CHECK(g.x_max() == doctest::Approx(1.0));
  CHECK(g.sup_abs() == doctest::Approx(3.0));
}

TEST_CASE("time signal duration invariant") {
  TimeSignal s = TimeSignal::sampled(0.0, 0.25, 5, [](double t) {
    return cplx{t, 0.0};
  });
  CHECK(s.T == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.t(4) == doctest::Approx(1.0));
  CHECK(std::abs(s.at_time(0.6) - cplx{0.6, 0.0}) < 1e-14);
  // Outside the window the signal reads zero.
  CHECK(std::abs(s.at_time(-0.5)) == 0.0);
  CHECK(std::abs(s.at_time(2.0)) == 0.0);
}

TEST_CASE("time signal derivative is second order") {
  // g(t) = t^2: centered and one-sided second-order differences are exact.
  TimeSignal s = TimeSignal::sampled(0.0, 0.1, 11, [](double t) {
    return cplx{t * t, 0.0};
  });
  TimeSignal d = s.derivative();
  for (std::size_t i = 0; i < d.size(); ++i)
    CHECK(std::abs(d.samples[i] - cplx{2.0 * d.t(i), 0.0}) < 1e-12);
}

TEST_CASE("trapezoid l2 of a constant") {
  GridFunction g = GridFunction::sampled(0.0, 0.1, 11, Domain::half_line,
                                         [](double) { return cplx{2.0, 0.0}; });
  CHECK(g.l2_sq() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("linear interpolation on grids") {
  GridFunction g = GridFunction::sampled(-1.0, 0.5, 5, Domain::whole_line,
                                         [](double x) {
                                           return cplx{3.0 * x, 1.0};
                                         });
  CHECK(std::abs(g.interp(0.25) - cplx{0.75, 1.0}) < 1e-14);
  CHECK_THROWS_AS(g.interp(9.0), DomainError);
}
