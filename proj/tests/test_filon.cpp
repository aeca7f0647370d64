#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bhse/filon.hpp"
#include "bhse/grid.hpp"

using namespace bhse;

namespace {
std::vector<cplx> sample(double x0, double dx, std::size_t n,
                         cplx (*f)(double)) {
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(x0 + i * dx);
  return v;
}
}  // namespace

TEST_CASE("moments match closed forms across the series/recursion switch") {
  for (double mag : {1e-8, 1e-3, 0.5, 1.9, 2.1, 20.0}) {
    const cplx c{0.0, mag};
    const double delta = 1.0;
    const auto m = exp_moments(c, delta);
    const cplx ez = std::exp(c);
    // Antiderivatives evaluated directly (stable for these magnitudes).
    if (mag >= 0.5) {
      CHECK(std::abs(m[0] - (ez - 1.0) / c) < 1e-13);
      CHECK(std::abs(m[1] - (ez * (c - 1.0) + 1.0) / (c * c)) < 1e-13);
    }
    // First-order consistency for tiny c: M0 ~ delta, M1 ~ delta^2/2.
    if (mag <= 1e-3) {
      CHECK(std::abs(m[0] - 1.0) < 2e-3);
      CHECK(std::abs(m[1] - 0.5) < 2e-3);
      CHECK(std::abs(m[2] - 1.0 / 3.0) < 2e-3);
    }
  }
}

TEST_CASE("linear integrand with oscillatory weight is exact") {
  // int_0^1 e^{4 i s} s ds, quadratic interpolation reproduces s exactly.
  const cplx c{0.0, 4.0};
  auto v = sample(0.0, 0.01, 101, [](double s) { return cplx{s, 0.0}; });
  const cplx got = filon_exp_integral(v, 0.0, 0.01, c);
  const cplx want = (std::exp(c) * (c - 1.0) + 1.0) / (c * c);
  CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("constant integrand with unit-frequency weight is exact") {
  const cplx c{0.0, 1.0};
  auto v = sample(0.0, 0.05, 21, [](double) { return cplx{1.0, 0.0}; });
  const cplx got = filon_exp_integral(v, 0.0, 0.05, c);
  const cplx want = (std::exp(c) - 1.0) / c;
  CHECK(std::abs(got - want) < 1e-13);
}

TEST_CASE("high-frequency weight keeps interpolation-limited accuracy") {
  // int_0^1 e^{100 i s} sin(pi s) ds against the closed form.
  const cplx c{0.0, 100.0};
  auto v = sample(0.0, 5e-4, 2001,
                  [](double s) { return cplx{std::sin(pi * s), 0.0}; });
  const cplx got = filon_exp_integral(v, 0.0, 5e-4, c);
  const cplx ip{0.0, 1.0};
  auto piece = [&](cplx a) { return (std::exp(ip * a) - 1.0) / (ip * a); };
  const cplx want =
      (piece(c.imag() + pi) - piece(c.imag() - pi)) / cplx{0.0, 2.0};
  CHECK(std::abs(got - want) < 1e-9);
}

TEST_CASE("decaying weight handles long ranges without overflow") {
  // int_0^40 e^{-s} e^{-s} ds = (1 - e^{-80}) / 2.
  auto v = sample(0.0, 1e-3, 40001,
                  [](double s) { return cplx{std::exp(-s), 0.0}; });
  const cplx got = filon_exp_integral(v, 0.0, 1e-3, cplx{-1.0, 0.0});
  CHECK(std::abs(got - 0.5) < 1e-9);
}

TEST_CASE("growing weight overflows loudly") {
  auto v = sample(0.0, 1.0, 1001, [](double) { return cplx{1.0, 0.0}; });
  CHECK_THROWS_AS(filon_exp_integral(v, 0.0, 1.0, cplx{1.0, 0.0}),
                  DomainError);
}

TEST_CASE("subrange integration splits additively") {
  auto v = sample(0.0, 0.01, 201,
                  [](double s) { return std::exp(cplx{0.0, 3.0} * s); });
  const cplx c{0.0, -2.0};
  const cplx whole = filon_exp_integral(v, 0.0, 0.01, c, 0, 200);
  const cplx a = filon_exp_integral(v, 0.0, 0.01, c, 0, 120);
  const cplx b = filon_exp_integral(v, 0.0, 0.01, c, 120, 200);
  CHECK(std::abs(whole - a - b) < 1e-13);
}
