// Sampled-data containers: uniform spatial grids, uniform time signals and
// discrete spectra. All solvers exchange data through these types.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bhse/types.hpp"

namespace bhse {

enum class Domain { whole_line, half_line };

// Uniform complex samples u(x_min + i*dx), i = 0..n-1.
// half_line requires x_min == 0.
struct GridFunction {
  std::vector<cplx> samples;
  double x_min = 0.0;
  double dx = 1.0;
  Domain domain = Domain::whole_line;

  GridFunction() = default;
  GridFunction(std::vector<cplx> s, double x0, double step, Domain dom);

  static GridFunction sampled(double x0, double step, std::size_t n, Domain dom,
                              const std::function<cplx(double)>& f);

  std::size_t size() const { return samples.size(); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
  double x_max() const { return x(samples.size() - 1); }
  double sup_abs() const;
  // Trapezoid integral of |u|^2 over the grid.
  double l2_sq() const;
  // True when both end samples sit below floor_rel * sup|u|.
  bool decayed_at_ends(double floor_rel = decay_floor) const;
  cplx interp(double xq) const;  // linear interpolation inside the grid
};

// Uniform complex samples g(t0 + i*dt), i = 0..n-1, duration T = (n-1)*dt.
// reg_exponent records the Sobolev exponent the signal is meant to carry.
struct TimeSignal {
  std::vector<cplx> samples;
  double dt = 1.0;
  double T = 0.0;
  double reg_exponent = 0.0;
  double t0 = 0.0;

  TimeSignal() = default;
  TimeSignal(std::vector<cplx> s, double step, double reg = 0.0,
             double start = 0.0);

  static TimeSignal sampled(double start, double step, std::size_t n,
                            const std::function<cplx(double)>& f,
                            double reg = 0.0);
  static TimeSignal zero(double start, double step, std::size_t n,
                         double reg = 0.0);

  std::size_t size() const { return samples.size(); }
  double t(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double t_end() const { return t0 + T; }
  double sup_abs() const;
  cplx at_time(double tq) const;  // linear interpolation, zero outside grid
  // Centered first differences (one-sided second order at the ends).
  TimeSignal derivative() const;
};

// Discrete spectrum on the uniform frequency grid xi_min + m*dxi.
// x0 remembers the spatial origin so that the round trip is exact.
struct SpectralField {
  std::vector<cplx> coeffs;
  double xi_min = 0.0;
  double dxi = 1.0;
  double x0 = 0.0;

  std::size_t size() const { return coeffs.size(); }
  double xi(std::size_t m) const {
    return xi_min + static_cast<double>(m) * dxi;
  }
};

// Time-indexed family of spatial slices on a shared grid.
struct SpaceTimeField {
  std::vector<GridFunction> slices;  // slice m at time t0 + m*dt
  double dt = 1.0;
  double t0 = 0.0;

  std::size_t steps() const { return slices.size(); }
  double t(std::size_t m) const { return t0 + static_cast<double>(m) * dt; }
  double sup_abs() const;
};

}  // namespace bhse
