// Half-line linear solver: superposition of the whole-line propagator of the
// extended initial data, the Duhamel integral of the extended forcing, and
// the boundary evaluator applied to corrected boundary data. The corrections
// a_j (propagator traces) and b_j (Duhamel traces) are subtracted from g_j on
// a fine time grid, so the corrected signals vanish at t = 0 and extend
// compactly into (0, 2T); the evaluator window is 2T.
#pragma once

#include <array>
#include <cstddef>

#include "bhse/grid.hpp"
#include "bhse/problem.hpp"

namespace bhse {

struct AssemblyReport {
  // sup over output times of the H^s(R+) norm proxy, per term and total
  double propagator_norm = 0.0;
  double duhamel_norm = 0.0;
  double boundary_norm = 0.0;
  double total_norm = 0.0;
  // sup_t |q(0,t)-g0| + |q_x(0,t)-g1| over the fine grid, relative
  double boundary_residual = 0.0;
  // quadrature size of the boundary term at t = 0, where it vanishes exactly
  double sb_t0_residual = 0.0;
  std::size_t sb_nodes = 0;   // quadrature nodes behind the boundary term
  std::size_t box_lo = 0;     // whole-line box samples left of 0
  std::size_t box_hi = 0;     // and right of 0
  std::size_t nt_fine = 0;    // fine steps used for corrections and traces
};

struct LinearSolution {
  SpaceTimeField field;              // half-line slices, t = m T/nt
  std::array<TimeSignal, 4> traces;  // value, first, second, third at x = 0
  AssemblyReport assembly;
};

// Solves i q_t + q_xxxx = forcing with data (q0, g0, g1); kappa is ignored.
// Traces 0 and 1 are dedicated boundary-evaluator sums at x = 0; traces 2
// and 3 add one-sided sixth-order differences of the boundary term on a
// locally refined grid near 0 to the spectral propagator and Duhamel traces.
LinearSolution solve_linear_ibvp(const IBVPData& data);

struct EstimateReport {
  double solution_norm = 0.0;  // sup_{t <= T} H^s(R+), sampled on slices
  double q0_norm = 0.0;        // H^s(R+)
  double g0_norm = 0.0;        // H^{(2s+3)/8}(0,T)
  double g1_norm = 0.0;        // H^{(2s+1)/8}(0,T)
  double forcing_norm = 0.0;   // L^1((0,T); H^s(R+))
  double data_norm = 0.0;      // q0 + g0 + (1+sqrt(T)) g1 + forcing
  double ratio = 0.0;          // solution_norm / data_norm, 0 for zero data
};

EstimateReport linear_estimate_report(const LinearSolution& sol,
                                      const IBVPData& data);

// Restriction of g to [t0, t0+T] on its own sample grid (T snaps to nodes).
TimeSignal restrict_signal(const TimeSignal& g, double T);

// d^j/dx^j u(0) for j = 0..3 from one-sided sixth-order stencils on the
// first samples of a smooth half-line grid function.
cplx corner_derivative(const GridFunction& u, int j);

}  // namespace bhse
