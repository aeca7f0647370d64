// Whole-line Fourier analysis on uniform grids and the half-line transform.
//
// Conventions (used consistently everywhere):
//   forward   u^(xi) = \int e^{-i xi x} u(x) dx
//   inverse   u(x)   = (1/2pi) \int e^{+i xi x} u^(xi) dxi
//   H^s norm  ||u||  = sqrt( (1/2pi) \int (1+xi^2)^s |u^(xi)|^2 dxi )
// so that the s=0 norm is the plain L^2(dx) norm (Plancherel).
#pragma once

#include "bhse/grid.hpp"
#include "bhse/types.hpp"

namespace bhse {

// Discrete approximation of the forward transform. The frequency grid is
// monotone, contains xi=0 and spans [-floor(N/2), N-1-floor(N/2)]*dxi with
// dxi = 2pi/(N dx). Exact inverse of fourier_inverse.
SpectralField fourier_forward(const GridFunction& u);

// Exact discrete inverse of fourier_forward (round trip is machine-precision).
GridFunction fourier_inverse(const SpectralField& f);

double sobolev_norm_line(const GridFunction& u, double s);
double sobolev_norm_line(const SpectralField& f, double s);

// q^(k) = \int_0^\infty e^{-ikx} u(x) dx for Im k <= 0, quadrature on the
// sample range (truncation at x_max; the caller owns the decay check).
// Filon-type: exact in the exponential, O(dx^3) in the interpolation.
cplx halfline_transform(const GridFunction& u, cplx k);

}  // namespace bhse
