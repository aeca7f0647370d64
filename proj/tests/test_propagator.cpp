#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bhse/extension.hpp"
#include "bhse/propagator.hpp"

using namespace bhse;

namespace {

GridFunction box_gaussian(std::size_t n = 2048, double L = 80.0) {
  const double dx = L / static_cast<double>(n);
  return GridFunction::sampled(-L / 2.0, dx, n, Domain::whole_line,
                               [](double x) {
                                 return cplx{std::exp(-x * x / 2.0), 0.0} *
                                        std::exp(cplx{0.0, 1.5 * x});
                               });
}

// Plane-wave mode aligned with the periodic box: exact discrete evolution.
GridFunction box_mode(std::size_t n, double L, int m) {
  const double dx = L / static_cast<double>(n);
  const double xi = 2.0 * pi * m / L;
  return GridFunction::sampled(-L / 2.0, dx, n, Domain::whole_line,
                               [xi](double x) {
                                 return std::exp(cplx{0.0, xi * x});
                               });
}

}  // namespace

TEST_CASE("H^s norms are conserved to rounding") {
  GridFunction y0 = box_gaussian();
  for (double s : {0.0, 1.0, 2.0}) {
    const double n0 = sobolev_norm_line(y0, s);
    for (double t : {0.03, 0.4, 1.0}) {
      const double nt = sobolev_norm_line(propagate(y0, t), s);
      CHECK(std::abs(nt - n0) <= 1e-12 * n0);
    }
  }
}

TEST_CASE("plane-wave modes pick up the exact phase e^{i xi^4 t}") {
  const std::size_t n = 256;
  const double L = 32.0;
  for (int m : {1, 3, -5}) {
    GridFunction y0 = box_mode(n, L, m);
    const double xi = 2.0 * pi * m / L;
    const double t = 0.37;
    GridFunction yt = propagate(y0, t);
    const cplx phase = std::exp(cplx{0.0, xi * xi * xi * xi * t});
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      err = std::max(err, std::abs(yt.samples[i] - phase * y0.samples[i]));
    CHECK(err < 1e-11);
  }
}

TEST_CASE("semigroup property in the discrete setting") {
  GridFunction y0 = box_gaussian();
  GridFunction a = propagate(propagate(y0, 0.2), 0.3);
  GridFunction b = propagate(y0, 0.5);
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    err = std::max(err, std::abs(a.samples[i] - b.samples[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("traces of grid modes match the analytic phase sums") {
  const std::size_t n = 256;
  const double L = 32.0;
  const double xi1 = 2.0 * pi * 4 / L;
  const double xi2 = 2.0 * pi * (-7) / L;
  GridFunction y0 = box_mode(n, L, 4);
  GridFunction y1 = box_mode(n, L, -7);
  for (std::size_t i = 0; i < n; ++i) y0.samples[i] += y1.samples[i];

  const double dt = 0.01;
  const std::size_t nt = 21;
  for (int j = 0; j <= 3; ++j) {
    TimeSignal a = propagator_trace(y0, j, dt, nt);
    for (std::size_t m = 0; m < nt; ++m) {
      const double t = a.t(m);
      const cplx want =
          std::pow(cplx{0.0, xi1}, j) *
              std::exp(cplx{0.0, xi1 * xi1 * xi1 * xi1 * t}) +
          std::pow(cplx{0.0, xi2}, j) *
              std::exp(cplx{0.0, xi2 * xi2 * xi2 * xi2 * t});
      CHECK(std::abs(a.samples[m] - want) < 1e-10);
    }
  }
}

TEST_CASE("duhamel of a free trajectory collapses to -i t S(t) g") {
  // If f(tau) = S(tau) g then e^{-i xi^4 tau} f^(tau) is tau-independent and
  // the trapezoid rule is exact: w(t_m) = -i t_m S(t_m) g to rounding.
  GridFunction g = box_gaussian(1024, 60.0);
  const double dt = 0.02;
  const std::size_t nt = 11;
  std::vector<GridFunction> slices;
  slices.reserve(nt);
  for (std::size_t m = 0; m < nt; ++m)
    slices.push_back(propagate(g, static_cast<double>(m) * dt));

  const double t = 0.2;
  GridFunction w = duhamel(slices, dt, t);
  GridFunction want = propagate(g, t);
  double err = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    err = std::max(err,
                   std::abs(w.samples[i] - (-iu) * t * want.samples[i]));
  CHECK(err < 1e-11);

  auto traces = duhamel_traces(slices, dt);
  for (int j = 0; j <= 3; ++j) {
    TimeSignal aj = propagator_trace(g, j, dt, nt);
    for (std::size_t m = 0; m < nt; ++m) {
      const double tm = static_cast<double>(m) * dt;
      const cplx want_tr = -iu * tm * aj.samples[m];
      CHECK(std::abs(traces[j].samples[m] - want_tr) < 1e-11);
    }
  }
}

TEST_CASE("duhamel is linear in the forcing") {
  GridFunction g = box_gaussian(512, 50.0);
  const double dt = 0.05;
  std::vector<GridFunction> f1, f2, sum;
  for (std::size_t m = 0; m < 5; ++m) {
    GridFunction a = propagate(g, m * dt);
    GridFunction b = a;
    for (cplx& v : b.samples) v *= cplx{0.3, -0.4};
    GridFunction c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
      c.samples[i] = a.samples[i] + b.samples[i];
    f1.push_back(a);
    f2.push_back(b);
    sum.push_back(c);
  }
  GridFunction wa = duhamel(f1, dt, 0.2);
  GridFunction wb = duhamel(f2, dt, 0.2);
  GridFunction ws = duhamel(sum, dt, 0.2);
  double err = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i)
    err = std::max(err, std::abs(ws.samples[i] - wa.samples[i] -
                                 wb.samples[i]));
  CHECK(err < 1e-13);
}

TEST_CASE("duhamel rejects off-grid times") {
  GridFunction g = box_gaussian(256, 40.0);
  std::vector<GridFunction> f{g, g, g};
  CHECK_THROWS_AS(duhamel(f, 0.1, 0.777), DomainError);
}

TEST_CASE("planned boxes keep the evolution away from the edges") {
  const double dx = 0.05;
  GridFunction q0 = GridFunction::sampled(
      0.0, dx, 601, Domain::half_line, [](double x) {
        return cplx{std::exp(-(x - 6.0) * (x - 6.0)), 0.0};
      });
  const double T = 0.1;
  BoxPlan plan = plan_box(q0, 1.0, T);
  GridFunction boxed = embed_halfline(q0, 1.0, plan.n_lo, plan.n_hi);
  CHECK(next_fast_size(boxed.size()) == boxed.size());
  GridFunction yt = propagate(boxed, T);
  const double sup = yt.sup_abs();
  CHECK(std::abs(yt.samples.front()) < 1e-8 * sup);
  CHECK(std::abs(yt.samples.back()) < 1e-8 * sup);
}
