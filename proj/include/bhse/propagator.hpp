// Whole-line solution operator for i y_t + y_xxxx = 0 and its Duhamel
// integral, realized as the Fourier multiplier e^{i xi^4 t}. Also extracts
// boundary traces d^j_x(...)|_{x=0} by direct spectral sums, used as the
// correction data a_j, b_j in the half-line representation.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "bhse/fourier.hpp"
#include "bhse/grid.hpp"

namespace bhse {

// S(t) y0. The grid is treated as periodic; the caller is responsible for a
// box large enough that nothing reaches the edges (see plan_box).
GridFunction propagate(const GridFunction& y0, double t);

// d^j_x S(t) y0 at x=0 for j = 0..3, sampled on a uniform time grid.
TimeSignal propagator_trace(const GridFunction& y0, int j, double dt,
                            std::size_t n, double reg = 0.0);

// w(t) = -i int_0^t S(t-tau) f(tau) dtau with trapezoid quadrature on the
// slice grid. t must lie within dt/2 of a slice time.
GridFunction duhamel(const std::vector<GridFunction>& f_slices, double dt,
                     double t);

// Streaming form of the Duhamel integral: slices are pushed in time order,
// the cumulative spectral integral is updated in O(N) and the current field
// or trace can be read after each push. Memory stays O(N).
class DuhamelStream {
 public:
  DuhamelStream(double x_min, double dx, std::size_t n, double dt);

  void push(const GridFunction& f_slice);  // slice at t_m, m = push count
  std::size_t steps() const { return m_; }

  GridFunction current_field() const;       // w(t_{m-1}) on the box
  cplx current_trace(int j) const;          // b_j(t_{m-1})

 private:
  double x_min_, dx_, dt_;
  std::size_t n_, m_ = 0;
  std::vector<double> xi_;
  std::vector<cplx> integ_;  // int_0^{t} e^{-i xi^4 tau} f^(xi,tau) dtau
  std::vector<cplx> prev_;   // e^{-i xi^4 t_{m-1}} f^(xi, t_{m-1})
  double cur_t_ = 0.0;
};

// Convenience wrapper: all four trace signals b_j, j=0..3, on the slice grid.
std::array<TimeSignal, 4> duhamel_traces(const std::vector<GridFunction>& f,
                                         double dt);

// Whole-line box for a half-line problem of horizon T: left room for the
// reflection margin plus dispersive spread, right room past x_max, total
// size rounded up to an FFT-friendly length. The spread estimate uses the
// group velocity 4 xi^3 at the highest frequency carrying spectral mass
// above the decay floor.
struct BoxPlan {
  std::size_t n_lo = 0;  // samples at x < 0
  std::size_t n_hi = 0;  // samples at x > 0 (grid ends at n_hi*dx)
  std::size_t size() const { return n_lo + n_hi + 1; }
  double x_min(double dx) const { return -static_cast<double>(n_lo) * dx; }
};

BoxPlan plan_box(const GridFunction& u_half, double s, double T,
                 double pad_override = 0.0);

std::size_t next_fast_size(std::size_t n);

}  // namespace bhse
