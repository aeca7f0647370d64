#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bhse/extension.hpp"
#include "bhse/fourier.hpp"
#include "bhse/grid.hpp"

using namespace bhse;

TEST_CASE("reflection coefficients reproduce derivatives through order 5") {
  for (int k = 0; k <= 5; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= 6; ++j)
      acc += hestenes_coeff[j - 1] * std::pow(-static_cast<double>(j), k);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("smoothstep endpoints and monotonicity") {
  CHECK(smoothstep(-1.0) == 0.0);
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep(2.0) == 1.0);
  double prev = 0.0;
  for (double u = 0.05; u < 1.0; u += 0.05) {
    CHECK(smoothstep(u) >= prev);
    prev = smoothstep(u);
  }
  CHECK(taper_down(0.0, 1.0, 2.0) == 1.0);
  CHECK(taper_down(2.5, 1.0, 2.0) == 0.0);
}

namespace {
GridFunction half_exp(double x_max = 30.0, double dx = 0.01) {
  const std::size_t n = static_cast<std::size_t>(x_max / dx) + 1;
  return GridFunction::sampled(0.0, dx, n, Domain::half_line, [](double x) {
    return cplx{std::exp(-x), 0.0};
  });
}
}  // namespace

TEST_CASE("half-line extension: shared nodes exact, left tail exact zero") {
  GridFunction u = half_exp();
  GridFunction ext = extend_halfline(u, 1.0);
  const std::size_t off = ext.size() - u.size();
  for (std::size_t i = 0; i < u.size(); i += 111)
    CHECK(ext.samples[off + i] == u.samples[i]);
  CHECK(std::abs(ext.samples.front()) == 0.0);
  CHECK(ext.x_min < 0.0);
}

TEST_CASE("extension is smooth across the junction") {
  // For e^{-x} the matched extension behaves like e^{+x} near 0-; the
  // reflection matches derivatives through order 5, so the defect is O(x^6).
  GridFunction u = half_exp();
  GridFunction ext = extend_halfline(u, 1.0);
  const std::size_t off = ext.size() - u.size();
  for (int i = 1; i <= 5; ++i) {
    const double x = -0.01 * i;
    CHECK(std::abs(ext.samples[off - i] - cplx{std::exp(-x), 0.0}) <
          10.0 * std::pow(x, 6) + 1e-12);
  }
}

TEST_CASE("extension constant stays moderate for s=1") {
  GridFunction u = half_exp();
  ExtensionReport rep;
  extend_halfline(u, 1.0, &rep);
  // Direct half-line H^1 norm of e^{-x} is 1; extension norm stays close.
  CHECK(rep.declared_norm == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.c_ext > 0.0);
  CHECK(rep.c_ext <= 10.0);
}

TEST_CASE("extension rejects non-decayed data") {
  GridFunction u = GridFunction::sampled(0.0, 0.01, 3001, Domain::half_line,
                                         [](double) { return cplx{1.0, 0.0}; });
  CHECK_THROWS_AS(extend_halfline(u, 1.0), DomainError);
}

TEST_CASE("embed into larger box pads with exact zeros") {
  GridFunction u = half_exp();
  GridFunction box = embed_halfline(u, 1.0, 2000, 4000);
  CHECK(box.size() == 6001);
  CHECK(box.x_min == doctest::Approx(-20.0));
  CHECK(std::abs(box.samples.front()) == 0.0);
  CHECK(std::abs(box.samples.back()) == 0.0);
  // Shared nodes (x>=0) are exact copies.
  for (std::size_t i = 0; i < u.size(); i += 517)
    CHECK(box.samples[2000 + i] == u.samples[i]);
}

TEST_CASE("boundary-data extension: support and agreement") {
  const double T = 1.0;
  const double dt = 1e-3;
  const std::size_t n = 1001;
  TimeSignal p0 = TimeSignal::sampled(
      0.0, dt, n,
      [T](double t) {
        const double s = std::sin(pi * t / T);
        return cplx{s * s, 0.0};
      },
      5.0 / 8.0);
  TimeSignal p1 = TimeSignal::zero(0.0, dt, n, 3.0 / 8.0);
  auto [e0, e1] = extend_boundary_data(p0, p1, T);

  // Agreement on [0, T].
  for (std::size_t i = 0; i < n; i += 201)
    CHECK(std::abs(e0.at_time(i * dt) - p0.samples[i]) < 1e-12);
  // Exact zeros outside (0, 2T).
  CHECK(std::abs(e0.samples.front()) == 0.0);
  CHECK(std::abs(e0.samples.back()) == 0.0);
  for (std::size_t i = 0; i < e0.size(); ++i) {
    const double t = e0.t(i);
    if (t < -1e-12 || t > 2.0 * T + 1e-12)
      CHECK(std::abs(e0.samples[i]) == 0.0);
  }
  // Smooth continuation just past T.
  CHECK(std::abs(e0.at_time(T + dt)) < 1e-3);
  CHECK(std::abs(e1.sup_abs()) == 0.0);
}

TEST_CASE("boundary-data extension enforces the corner condition") {
  const double dt = 1e-2;
  TimeSignal bad = TimeSignal::sampled(
      0.0, dt, 101, [](double t) { return cplx{1.0 + t, 0.0}; }, 5.0 / 8.0);
  TimeSignal ok = TimeSignal::zero(0.0, dt, 101, 3.0 / 8.0);
  CHECK_THROWS_AS(extend_boundary_data(bad, ok, 1.0), CompatibilityError);
  // Below the trace threshold the same values are admissible.
  TimeSignal rough = bad;
  rough.reg_exponent = 0.375;
  CHECK_NOTHROW(extend_boundary_data(rough, ok, 1.0));
}

TEST_CASE("interval norm: L2 of the half-period sine") {
  TimeSignal g = TimeSignal::sampled(0.0, 1e-3, 1001, [](double t) {
    return cplx{std::sin(pi * t), 0.0};
  });
  const double got = sobolev_norm_interval(g, 0.0);
  CHECK(got == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("interval norm homogeneity is exact in both branches") {
  TimeSignal g = TimeSignal::sampled(0.0, 1e-3, 1001, [](double t) {
    return cplx{std::exp(-t) * std::cos(3.0 * t), 0.4 * t};
  });
  for (double r : {0.25, 0.875}) {
    const double n1 = sobolev_norm_interval(g, r);
    TimeSignal h = g;
    for (cplx& v : h.samples) v *= 7.0;
    CHECK(sobolev_norm_interval(h, r) ==
          doctest::Approx(7.0 * n1).epsilon(1e-12));
  }
}

TEST_CASE("interval norm reports endpoint ramp corrections above r=1/2") {
  TimeSignal g = TimeSignal::sampled(0.0, 1e-3, 1001, [](double t) {
    return cplx{1.0 + 0.2 * t, 0.0};
  });
  IntervalNormInfo info;
  const double n = sobolev_norm_interval(g, 0.875, &info);
  CHECK(n > 0.0);
  CHECK(info.ramp_correction > 0.0);
  CHECK(std::abs(info.left_value - cplx{1.0, 0.0}) < 1e-14);
}
