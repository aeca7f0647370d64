// Problem bundle for the half-line fourth-order Schrödinger IBVP
// i q_t + q_xxxx = kappa |q|^p q, q(0,t) = g0, q_x(0,t) = g1, q(x,0) = q0,
// plus the hypothesis checks that gate the solvers.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bhse/fokas.hpp"
#include "bhse/grid.hpp"

namespace bhse {

struct SolveTolerances {
  double fixed_point_tol = 1e-8;  // relative to the iteration ball radius
  int max_iterations = 25;
  double blowup_factor = 1e6;  // H^s growth treated as the divergence branch
  SbConfig quad;               // contour quadrature settings
};

// Output discretization shared by the solvers: x in [0, x_max] step dx,
// t in [0, T] in nt steps.
struct SolverGrid {
  double dx = 0.05;
  double x_max = 20.0;
  std::size_t nt = 64;
  std::size_t nt_fine = 0;  // boundary-correction steps, 0 = 8*nt

  std::size_t nx() const {
    return static_cast<std::size_t>(std::lround(x_max / dx));
  }
  std::size_t fine_steps() const { return nt_fine == 0 ? 8 * nt : nt_fine; }
};

struct IBVPData {
  GridFunction q0;
  TimeSignal g0, g1;
  // optional interior forcing f(x,t); empty = none
  std::function<cplx(double, double)> forcing;
  cplx kappa = 0.0;
  double p = 2.0;
  double s = 1.0;
  double T = 0.25;
  SolveTolerances tol;
  SolverGrid grid;
};

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // the violated clause when pass is false
};

// Smoothness assumptions tying the nonlinearity power to the Sobolev index:
// integer s needs p >= s for odd-integer p and floor(p) >= s-1 otherwise;
// non-integer s needs p > s for odd-integer p and floor(p) >= floor(s)
// otherwise. Even-integer p makes |q|^p q polynomial and passes outright.
// Empty result means satisfied.
std::string nonlinearity_clause(double s, double p);

// Nonlinear theory range: s in (1/2, 9/2), s != 3/2.
std::string s_clause_nonlinear(double s);
// Linear assembly range: s in [0, 9/2), s not in {1/2, 3/2}.
std::string s_clause_linear(double s);

// Full per-hypothesis report; includes the data compatibility corner checks
// when q0 and the boundary signals are non-empty.
std::vector<HypothesisCheck> validate_problem(const IBVPData& data,
                                              bool nonlinear);

// Throws ConfigError / CompatibilityError on the first failed hypothesis.
void require_valid(const IBVPData& data, bool nonlinear);

}  // namespace bhse
