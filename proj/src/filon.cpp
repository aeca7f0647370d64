#include "bhse/filon.hpp"

#include <cmath>

namespace bhse {

std::array<cplx, 3> exp_moments(cplx c, double delta) {
  const cplx z = c * delta;
  std::array<cplx, 3> m{};
  if (std::abs(z) <= 2.0) {
    // M_m = delta^{m+1} sum_n z^n / (n! (m+n+1))
    for (int mm = 0; mm < 3; ++mm) {
      cplx term{1.0, 0.0};  // z^n / n!
      cplx acc = term / cplx(mm + 1.0, 0.0);
      for (int n = 1; n < 40; ++n) {
        term *= z / static_cast<double>(n);
        const cplx add = term / cplx(mm + n + 1.0, 0.0);
        acc += add;
        if (std::abs(add) < 1e-20 * std::abs(acc)) break;
      }
      m[mm] = acc * std::pow(delta, mm + 1);
    }
  } else {
    const cplx ez = std::exp(z);
    m[0] = (ez - 1.0) / c;
    m[1] = (delta * ez - m[0]) / c;
    m[2] = (delta * delta * ez - 2.0 * m[1]) / c;
  }
  return m;
}

namespace {

// Quadratic through (0,h0),(delta,h1),(2delta,h2) integrated against e^{cu}
// over [0, 2delta]. m holds the moments over [0, 2delta].
cplx segment_quadratic(cplx h0, cplx h1, cplx h2, double delta,
                       const std::array<cplx, 3>& m) {
  const cplx alpha = h0;
  const cplx beta = (-3.0 * h0 + 4.0 * h1 - h2) / (2.0 * delta);
  const cplx gamma = (h0 - 2.0 * h1 + h2) / (2.0 * delta * delta);
  return alpha * m[0] + beta * m[1] + gamma * m[2];
}

cplx segment_linear(cplx h0, cplx h1, double delta,
                    const std::array<cplx, 3>& m) {
  return h0 * m[0] + (h1 - h0) / delta * m[1];
}

}  // namespace

cplx filon_exp_integral(const std::vector<cplx>& samples, double x0, double dx,
                        cplx c, std::size_t ia, std::size_t ib) {
  if (ib <= ia) return {0.0, 0.0};
  if (ib >= samples.size())
    throw DomainError("filon_exp_integral: range outside samples");
  const double s_lo = x0 + static_cast<double>(ia) * dx;
  const double s_hi = x0 + static_cast<double>(ib) * dx;
  const double re_max = std::max(c.real() * s_lo, c.real() * s_hi);
  if (re_max > 700.0)
    throw DomainError("filon_exp_integral: e^{Re(c) s} overflows on range");

  cplx acc{0.0, 0.0};
  std::size_t i = ia;
  // Phase carried by recurrence, refreshed periodically to kill drift.
  // Moments depend only on (c, dx), so they are hoisted out of the loop.
  cplx phase = std::exp(c * s_lo);
  const cplx step2 = std::exp(c * (2.0 * dx));
  const auto m2 = exp_moments(c, 2.0 * dx);
  std::size_t since_refresh = 0;
  while (i + 2 <= ib) {
    acc += phase * segment_quadratic(samples[i], samples[i + 1],
                                     samples[i + 2], dx, m2);
    i += 2;
    phase *= step2;
    if (++since_refresh == 256) {
      phase = std::exp(c * (x0 + static_cast<double>(i) * dx));
      since_refresh = 0;
    }
  }
  if (i + 1 <= ib)
    acc += phase * segment_linear(samples[i], samples[i + 1], dx,
                                  exp_moments(c, dx));
  return acc;
}

cplx filon_exp_integral(const std::vector<cplx>& samples, double x0, double dx,
                        cplx c) {
  return filon_exp_integral(samples, x0, dx, c, 0, samples.size() - 1);
}

}  // namespace bhse
