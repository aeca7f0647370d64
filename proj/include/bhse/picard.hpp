// Nonlinear local solver. One application of the fixed-point map re-solves
// the linear problem with the frozen nonlinearity kappa |q|^p q as interior
// forcing; the iteration starts from the linear solution and the horizon is
// halved until the measured ratio of successive increments stays below 1/2.
// Longer horizons are reached by restarting from the final slice.
#pragma once

#include <iosfwd>
#include <vector>

#include "bhse/linear.hpp"
#include "bhse/problem.hpp"

namespace bhse {

// Pointwise kappa |q|^p q on the grid of q; |0|^p 0 = 0 for p > 0.
GridFunction nonlinearity(const GridFunction& q, cplx kappa, double p);

// One fixed-point application: linear solve whose forcing is the
// nonlinearity of the candidate, interpolated linearly between its slices
// and tapered to zero ahead of x_max (the candidate is unknown beyond the
// window, and the extension of the forcing requires a decayed right end).
// Any explicit data.forcing is added on top. The candidate must live on the
// output grid of data.grid over [0, data.T].
LinearSolution apply_Psi(const SpaceTimeField& q, const IBVPData& data);

enum class PicardStatus { converged, continued, blowup_suspected };

struct PicardResult {
  LinearSolution solution;
  double T0 = 0.0;       // achieved horizon
  int iterations = 0;    // fixed-point applications consumed
  int halvings = 0;      // horizon halvings taken before convergence
  double contraction_factor = 0.0;  // max ratio of successive increments
  double ball_radius = 0.0;  // 2 sup_t ||linear solution||_{H^s}, per horizon
  double residual = 0.0;     // final increment, compare tol * ball_radius
  PicardStatus status = PicardStatus::converged;
  std::vector<double> norm_history;  // H^s(R+) per output slice
};

// Fixed-point iteration q <- Psi(q) from the linear solution. Convergence
// means increment <= fixed_point_tol * ball_radius; the horizon is halved
// when the first measured increment ratio exceeds 1/2, and the run reports
// blowup_suspected when iterations or halvings run out or the slice norm
// exceeds blowup_factor times the linear norm. When log is given, one JSON
// object per event (horizon, iterate, halve, converged, blowup_suspected)
// is written per line.
PicardResult solve_nonlinear(const IBVPData& data, std::ostream* log = nullptr);

// Restarted march to the horizon T: segments of the proven lifespan, each
// solved from the previous final slice with the original boundary data
// shifted. If a segment fails to hold its lifespan the whole march restarts
// with half the segment (the output grid stays uniform); blowup_suspected
// when segments reach T/64, restarts run out, or the norm history exceeds
// blowup_factor times the first segment's data norm.
PicardResult continue_solution(const PicardResult& first, const IBVPData& data,
                               double T, std::ostream* log = nullptr);

// Distance ratio ||qA - qB||_{C([0,T0];H^s)} / (||dq0||_{H^s} + ||dg0|| +
// ||dg1||) with the data distances in the estimate-report norms. Identical
// data gives 0; a zero data distance with distinct solutions reports NaN.
double lipschitz_experiment(const IBVPData& a, const IBVPData& b, double T0,
                            std::ostream* log = nullptr);

}  // namespace bhse
