// Exponential-weighted quadrature of sampled data. The integrand weight
// e^{c s} is treated exactly (Filon-type), so accuracy is set purely by the
// polynomial interpolation of the samples and never by how oscillatory the
// weight is. Used for boundary transforms (c on the imaginary axis) and
// half-line transforms (Re c <= 0).
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bhse/types.hpp"

namespace bhse {

// Moments M_m = \int_0^delta u^m e^{cu} du, m = 0,1,2.
// Series for small |c*delta|, upward recursion otherwise.
std::array<cplx, 3> exp_moments(cplx c, double delta);

// \int e^{c s} u(s) ds over s in [x0+ia*dx, x0+ib*dx], with u the
// piecewise-quadratic interpolant of samples (pairs of intervals; a trailing
// odd interval is handled linearly). Error O(dx^3) uniformly in |Im c|.
// Throws DomainError when Re(c)*s would overflow on the range.
cplx filon_exp_integral(const std::vector<cplx>& samples, double x0, double dx,
                        cplx c, std::size_t ia, std::size_t ib);

cplx filon_exp_integral(const std::vector<cplx>& samples, double x0, double dx,
                        cplx c);

}  // namespace bhse
