// Extension operators and interval Sobolev norms.
//
// Half-line data is pushed to the whole line by a fixed high-order reflection
// u(-x) = sum_{j=1..6} a_j u(j x) (matches derivatives through order 5 at 0),
// smoothly tapered to exact zero inside the margin. Interval norms are the
// line norms of one fixed deterministic extension, i.e. computable
// upper-bound proxies for the restriction norms. Every step is linear in the
// data and all branch thresholds are relative, so absolute homogeneity of the
// reported norms is exact.
#pragma once

#include <optional>

#include "bhse/grid.hpp"
#include "bhse/types.hpp"

namespace bhse {

// C-infinity transition: 0 for u<=0, 1 for u>=1, strictly monotone between.
double smoothstep(double u);
// 1 for r<=r1, 0 for r>=r2, smooth monotone in between (requires r1<r2).
double taper_down(double r, double r1, double r2);

// Reflection coefficients: sum_j a_j (-j)^k = 1 for k = 0..5.
inline constexpr double hestenes_coeff[6] = {21.0, -70.0, 105.0,
                                             -84.0, 35.0,  -6.0};

struct ExtensionReport {
  double margin = 0.0;         // extension width on the left
  double line_norm = 0.0;      // H^s norm of the produced extension
  double declared_norm = 0.0;  // direct half-line norm proxy of the input
  double c_ext = 0.0;          // line_norm / declared_norm
};

// Whole-line extension of half-line data. Margin min(5, x_max/6); the
// reflection is exact on shared nodes and the left tail reaches exact zero.
// Requires the input to be decayed at x_max (relative decay floor).
GridFunction extend_halfline(const GridFunction& u, double s,
                             ExtensionReport* report = nullptr);

// Direct half-line H^s proxy used only for reporting c_ext: integer orders by
// finite differences + trapezoid, fractional s by log-convex interpolation.
double halfline_norm_direct(const GridFunction& u, double s);

// Embed half-line data into a prescribed whole-line box [-n_lo*dx, n_hi*dx]:
// reflection margin on the left, exact zeros elsewhere.
GridFunction embed_halfline(const GridFunction& u, double s, std::size_t n_lo,
                            std::size_t n_hi);

// Compact extension of corrected boundary data from (0,T) to the line with
// support inside (0,2T): values kept on [0,T], high-order reflection about
// t=T tapered to zero before 2T, zero for t<=0. Signals whose regularity
// exponent exceeds 1/2 must vanish at t=0 (compatibility error otherwise).
std::pair<TimeSignal, TimeSignal> extend_boundary_data(const TimeSignal& p0,
                                                       const TimeSignal& p1,
                                                       double T);

struct IntervalNormInfo {
  double ramp_correction = 0.0;  // added-back endpoint ramp norms
  cplx left_value{0.0, 0.0};
  cplx right_value{0.0, 0.0};
};

// H^r(t0, t0+T) upper-bound proxy. r <= 1/2: zero extension. r > 1/2:
// endpoint ramps subtracted, remainder reflected and tapered, ramp norms
// added back and reported as the correction.
double sobolev_norm_interval(const TimeSignal& g, double r,
                             IntervalNormInfo* info = nullptr);

}  // namespace bhse
