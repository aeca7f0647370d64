// Multiplier diagnostics for i q_t + q_xxxx = kappa |q|^p q on the half-line:
// mass balance, H^2 energy law, and the two boundary-trace identities that
// express |q_xx(0,t)|^2 and |q_xxx(0,t)|^2 through the data and interior
// moments. All identities assume real coupling; the real part of kappa
// enters. Residuals are LHS - RHS on the field's slice grid and converge
// to zero with the field's own discretization error.
#pragma once

#include <array>
#include <map>
#include <string>

#include "bhse/grid.hpp"
#include "bhse/problem.hpp"
#include "bhse/types.hpp"

namespace bhse {

// d^j_x q(0, t_m) for j = 0..3 by one-sided fourth-order stencils on each
// stored slice. Callers holding refined traces (the solver's spectral ones,
// a scheme's ghost values) should pass those to the residual ops instead.
std::array<TimeSignal, 4> stencil_traces(const SpaceTimeField& q);

// E(t) = 1/2 int |q|^2 + 1/2 int |q_xx|^2 - Re(kappa)/(p+2) int |q|^{p+2},
// with the second derivative taken spectrally on a smooth whole-line
// extension of the slice (tapered ahead of x_max so the extension exists).
// Linear interpolation between slice times.
double h2_energy(const SpaceTimeField& q, cplx kappa, double p, double t);

// d/dt 1/2 int |q|^2 - Im[q_xxx(0,t) conj(g0)] + Im[q_xx(0,t) conj(g1)].
TimeSignal l2_identity_residual(
    const SpaceTimeField& q, const TimeSignal& g0, const TimeSignal& g1,
    const std::array<TimeSignal, 4>* traces = nullptr);

// d/dt [1/2 int |q_xx|^2 - Re(kappa)/(p+2) int |q|^{p+2}]
//   - Re[q_xxx(0,t) conj(g0')] + Re[q_xx(0,t) conj(g1')].
TimeSignal h2_identity_residual(
    const SpaceTimeField& q, const TimeSignal& g0, const TimeSignal& g1,
    cplx kappa, double p, const std::array<TimeSignal, 4>* traces = nullptr);

// 1/2 |q_xx(0,t)|^2 - 1/2 d/dt Im int q conj(q_x) - 1/2 Im[g0 conj(g0')]
//   - Re[q_xxx(0,t) conj(g1)] + Re(kappa)/(p+2) |g0|^{p+2}.
TimeSignal second_trace_identity_residual(
    const SpaceTimeField& q, const TimeSignal& g0, const TimeSignal& g1,
    cplx kappa, double p, const std::array<TimeSignal, 4>* traces = nullptr);

// 1/2 |q_xxx(0,t)|^2 minus the combination of corner products, the moment
// d/dt Im int q_xx conj(q_x), and the three nonlinear terms; |q|^{p-2} is
// set to zero at nodes with |q| < 1e-12 when p < 2 (the factor multiplies
// q^2, so the product vanishes in the limit).
TimeSignal third_trace_identity_residual(
    const SpaceTimeField& q, const TimeSignal& g0, const TimeSignal& g1,
    cplx kappa, double p, const std::array<TimeSignal, 4>* traces = nullptr);

// Fitted constants of the global-bound chain on a computed run. Each c_* is
// the smallest nonnegative constant making its inequality hold at every
// slice time, with the boundary data measured in full-horizon H^1 proxies.
struct BoundChain {
  bool regime_ok = false;  // Re(kappa) <= 0, Im(kappa) = 0, p <= 2
  double e_initial = 0.0;
  double e_min = 0.0;   // nonnegativity witness for defocusing runs
  double e_max = 0.0;
  double c_energy = 0.0;  // E(t) <= E(0) + c [A(t) |g0|_{H1} + B(t) |g1|_{H1}]
  double c_second = 0.0;  // B^2(t) <= c [1 + A(t)] + 3 E(t)
  double c_third = 0.0;   // A^2(t) <= c [1 + B(t) + E(t)^{(p+2)/2}] + 2 E(t)
  bool energy_bounded = false;
  // p = 2 closes only for small data: 1 - |g0|_{H1} sqrt(c_third), the
  // (positive = closable) absorption headroom; 1 exactly when p < 2.
  double absorption_margin = 0.0;
};

struct EnergyReport {
  TimeSignal E;  // real-valued, slice grid
  TimeSignal A;  // sqrt int_0^t |q_xxx(0,.)|^2, on the trace grid
  TimeSignal B;  // sqrt int_0^t |q_xx(0,.)|^2
  std::map<std::string, TimeSignal> residuals;
  BoundChain chain;  // filled by global_bound_check
};

// E, A, B and all four identity residuals in one pass over the field.
EnergyReport energy_report(const SpaceTimeField& q, const TimeSignal& g0,
                           const TimeSignal& g1, cplx kappa, double p,
                           const std::array<TimeSignal, 4>* traces = nullptr);

// Fit the chain constants; focusing coupling or p > 2 leaves regime_ok
// false and the constants zero (the bounds are proved defocusing-only).
BoundChain global_bound_check(const EnergyReport& report, const IBVPData& data);

}  // namespace bhse
