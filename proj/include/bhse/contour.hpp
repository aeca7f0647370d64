// Contour geometry and quadrature for the quarter-plane sector boundaries
// where Re(-i k^4) = 0.
//
//   gamma1: arg k = pi/4    traversed outward   (right sector, right edge)
//   gamma2: arg k = pi/2    traversed inward    (right sector, left edge)
//   gamma3: arg k = 3pi/4   traversed outward   (left sector, right edge)
//   gamma4: arg k = pi      traversed inward    (left sector, left edge)
//
// Orientation keeps the sector on the left, so the oriented integral over a
// segment is  sign * int_0^{r_max} F(d r) d dr  with the signs below. Nodes
// returned by segment_nodes carry direction, orientation and panel weights
// already baked in: the oriented integral is just sum w_i F(k_i).
//
// Panels: dyadic near the origin ([0,1/8],...,[1/2,1]) then unit width, with
// the Gauss-Legendre order per panel sized to a caller-supplied phase budget
// and recursive splitting when the budget tops out. Deterministic.
#pragma once

#include <functional>
#include <vector>

#include "bhse/types.hpp"

namespace bhse {

enum class Ray { gamma1, gamma2, gamma3, gamma4 };

cplx ray_direction(Ray ray);      // unit complex along the ray
double ray_orientation(Ray ray);  // +1 outward, -1 inward
bool ray_tau_negative(Ray ray);   // sign of tau = k^4 on the ray

// Fourth root of tau lying on the given ray (tau < 0 on gamma1/gamma3,
// tau > 0 on gamma2/gamma4). Branch arguments pi, 2pi, 3pi, 4pi.
cplx fourth_root_on_ray(double tau, Ray ray);

// The two named branch conventions: "argument pi" places roots of negative
// reals on gamma1; "negative real root" sends positive reals to -tau^{1/4}.
enum class BranchMode { arg_pi_fourth_root, neg_real_fourth_root };

struct BranchRule {
  BranchMode mode;
  cplx fourth_root(double tau) const {
    return mode == BranchMode::arg_pi_fourth_root
               ? fourth_root_on_ray(tau, Ray::gamma1)
               : fourth_root_on_ray(tau, Ray::gamma4);
  }
};

// Smooth radial cutoff: 1 for |k| <= sqrt(2), 0 for |k| >= 2 sqrt(2).
double theta_cutoff(double abs_k);

enum class QuadRule { gauss_legendre_panels, tanh_sinh };

struct ContourSegment {
  Ray label;
  double r_max = 8.0;
  QuadRule rule = QuadRule::gauss_legendre_panels;
};

struct SegmentNodes {
  std::vector<cplx> k;  // points on the ray
  std::vector<cplx> w;  // oriented weights (direction and sign included)
  std::vector<double> r;  // radial coordinates |k|
};

// phase_span(a,b) estimates the total oscillation (radians) of the intended
// integrand over the radial panel [a,b]; it drives the per-panel order.
using PhaseSpan = std::function<double(double, double)>;

SegmentNodes segment_nodes(const ContourSegment& seg, const PhaseSpan& phase);

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// One-dimensional quadrature helpers shared by the evaluators: nodes and
// weights on [a,b] for either rule (tanh_sinh handles endpoint singularities).
void panel_rule(QuadRule rule, double a, double b, int order_hint,
                std::vector<double>& nodes, std::vector<double>& weights);

// Dyadic-then-unit radial panels on [0, r_max] with phase-adaptive orders;
// generic scalar version used for the tau integrals as well.
void adaptive_radial_rule(double a, double b, const PhaseSpan& phase,
                          std::vector<double>& nodes,
                          std::vector<double>& weights);

}  // namespace bhse
