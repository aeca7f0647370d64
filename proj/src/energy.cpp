#include "bhse/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bhse/extension.hpp"
#include "bhse/fourier.hpp"
#include "bhse/linear.hpp"

namespace bhse {

namespace {

// One-sided fourth-order stencils at the first node.
constexpr double kB1[5] = {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -1.0 / 4.0};
constexpr double kB2[6] = {15.0 / 4.0, -77.0 / 6.0, 107.0 / 6.0,
                           -13.0,      61.0 / 12.0, -5.0 / 6.0};
constexpr double kB3[7] = {-49.0 / 8.0,  29.0, -461.0 / 8.0, 62.0,
                           -307.0 / 8.0, 13.0, -15.0 / 8.0};
// Skewed fourth-order stencils at the second node (offsets -1..3, -1..4).
constexpr double kS1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
constexpr double kS2[6] = {10.0, -15.0, -4.0, 14.0, -6.0, 1.0};

cplx corner4(const GridFunction& u, int j) {
  cplx acc{0.0, 0.0};
  switch (j) {
    case 0:
      return u.samples[0];
    case 1:
      for (int i = 0; i < 5; ++i) acc += kB1[i] * u.samples[i];
      return acc / u.dx;
    case 2:
      for (int i = 0; i < 6; ++i) acc += kB2[i] * u.samples[i];
      return acc / (u.dx * u.dx);
    default:
      for (int i = 0; i < 7; ++i) acc += kB3[i] * u.samples[i];
      return acc / (u.dx * u.dx * u.dx);
  }
}

// Centered fourth-order first derivative, one-sided at the edges.
std::vector<cplx> diff1(const std::vector<cplx>& u, double dx) {
  const std::size_t n = u.size();
  std::vector<cplx> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) /
           (12.0 * dx);
  cplx a{0.0, 0.0};
  for (int k = 0; k < 5; ++k) a += kB1[k] * u[k];
  d[0] = a / dx;
  a = {0.0, 0.0};
  for (int k = 0; k < 5; ++k) a += kS1[k] * u[k];
  d[1] = a / (12.0 * dx);
  a = {0.0, 0.0};
  for (int k = 0; k < 5; ++k) a -= kS1[k] * u[n - 1 - k];
  d[n - 2] = a / (12.0 * dx);
  a = {0.0, 0.0};
  for (int k = 0; k < 5; ++k) a -= kB1[k] * u[n - 1 - k];
  d[n - 1] = a / dx;
  return d;
}

// Centered fourth-order second derivative, one-sided at the edges.
std::vector<cplx> diff2(const std::vector<cplx>& u, double dx) {
  const std::size_t n = u.size();
  const double dx2 = dx * dx;
  std::vector<cplx> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-u[i - 2] + 16.0 * u[i - 1] - 30.0 * u[i] + 16.0 * u[i + 1] -
            u[i + 2]) /
           (12.0 * dx2);
  cplx a{0.0, 0.0};
  for (int k = 0; k < 6; ++k) a += kB2[k] * u[k];
  d[0] = a / dx2;
  a = {0.0, 0.0};
  for (int k = 0; k < 6; ++k) a += kS2[k] * u[k];
  d[1] = a / (12.0 * dx2);
  a = {0.0, 0.0};
  for (int k = 0; k < 6; ++k) a += kS2[k] * u[n - 1 - k];
  d[n - 2] = a / (12.0 * dx2);
  a = {0.0, 0.0};
  for (int k = 0; k < 6; ++k) a += kB2[k] * u[n - 1 - k];
  d[n - 1] = a / dx2;
  return d;
}

double trapz_real(const std::vector<double>& v, double dx) {
  if (v.size() < 2) return 0.0;
  double acc = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += v[i];
  return acc * dx;
}

// int_{x >= 0} |q_xx|^2 with the derivative taken spectrally on a smooth
// whole-line extension; the slice is tapered ahead of x_max so the
// extension's decay requirement always holds (tail content is committed
// truncation error, like the domain cutoff itself).
double int_qxx2_spectral(const GridFunction& slice) {
  if (slice.sup_abs() == 0.0) return 0.0;
  GridFunction w = slice;
  const double x_hi = w.x(w.size() - 1);
  const double r2 = x_hi - 0.25;
  double r1 = std::max(0.5 * x_hi, x_hi - 4.0);
  if (r1 >= r2) r1 = 0.5 * r2;
  for (std::size_t i = 0; i < w.size(); ++i)
    w.samples[i] *= taper_down(w.x(i), r1, r2);
  GridFunction v = extend_halfline(w, 2.0);
  SpectralField f = fourier_forward(v);
  for (std::size_t m = 0; m < f.size(); ++m)
    f.coeffs[m] *= -f.xi(m) * f.xi(m);
  GridFunction qxx = fourier_inverse(f);
  const std::size_t i0 =
      static_cast<std::size_t>(std::llround(-qxx.x_min / qxx.dx));
  std::vector<double> a(qxx.size() - i0);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = std::norm(qxx.samples[i0 + i]);
  return trapz_real(a, qxx.dx);
}

double int_abs_pow(const GridFunction& u, double e) {
  std::vector<double> a(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    a[i] = std::pow(std::abs(u.samples[i]), e);
  return trapz_real(a, u.dx);
}

double slice_energy(const GridFunction& u, cplx kappa, double p) {
  const double mass = int_abs_pow(u, 2.0);
  const double curv = int_qxx2_spectral(u);
  const double pot = int_abs_pow(u, p + 2.0);
  return 0.5 * mass + 0.5 * curv - kappa.real() / (p + 2.0) * pot;
}

TimeSignal slice_signal(const SpaceTimeField& q,
                        const std::function<cplx(const GridFunction&)>& f) {
  TimeSignal s = TimeSignal::zero(q.t0, q.dt, q.slices.size());
  for (std::size_t m = 0; m < q.slices.size(); ++m) s.samples[m] = f(q.slices[m]);
  return s;
}

cplx trace_at(const std::array<TimeSignal, 4>* traces,
              const std::array<TimeSignal, 4>& fallback, int j, double t) {
  const auto& src = traces ? (*traces)[j] : fallback[j];
  return src.at_time(t);
}

}  // namespace

std::array<TimeSignal, 4> stencil_traces(const SpaceTimeField& q) {
  std::array<TimeSignal, 4> out;
  for (int j = 0; j < 4; ++j) {
    out[j] = TimeSignal::zero(q.t0, q.dt, q.slices.size());
    for (std::size_t m = 0; m < q.slices.size(); ++m)
      out[j].samples[m] = corner4(q.slices[m], j);
  }
  return out;
}

double h2_energy(const SpaceTimeField& q, cplx kappa, double p, double t) {
  if (q.slices.empty()) throw DomainError("h2_energy: empty field");
  const double u = (t - q.t0) / q.dt;
  const std::size_t m0 = static_cast<std::size_t>(
      std::clamp(u, 0.0, static_cast<double>(q.slices.size() - 1)));
  const double e0 = slice_energy(q.slices[m0], kappa, p);
  if (m0 + 1 >= q.slices.size()) return e0;
  const double w = u - static_cast<double>(m0);
  if (w <= 0.0) return e0;
  return (1.0 - w) * e0 + w * slice_energy(q.slices[m0 + 1], kappa, p);
}

TimeSignal l2_identity_residual(const SpaceTimeField& q, const TimeSignal& g0,
                                const TimeSignal& g1,
                                const std::array<TimeSignal, 4>* traces) {
  const auto fb = traces ? std::array<TimeSignal, 4>{} : stencil_traces(q);
  TimeSignal mass = slice_signal(q, [](const GridFunction& u) {
    return cplx(0.5 * int_abs_pow(u, 2.0), 0.0);
  });
  const TimeSignal dm = mass.derivative();
  TimeSignal res = TimeSignal::zero(q.t0, q.dt, q.slices.size());
  for (std::size_t m = 0; m < res.size(); ++m) {
    const double t = res.t(m);
    const cplx t2 = trace_at(traces, fb, 2, t);
    const cplx t3 = trace_at(traces, fb, 3, t);
    res.samples[m] = dm.samples[m].real() -
                     std::imag(t3 * std::conj(g0.at_time(t))) +
                     std::imag(t2 * std::conj(g1.at_time(t)));
  }
  return res;
}

TimeSignal h2_identity_residual(const SpaceTimeField& q, const TimeSignal& g0,
                                const TimeSignal& g1, cplx kappa, double p,
                                const std::array<TimeSignal, 4>* traces) {
  const auto fb = traces ? std::array<TimeSignal, 4>{} : stencil_traces(q);
  const double k = kappa.real();
  TimeSignal bracket = slice_signal(q, [k, p](const GridFunction& u) {
    return cplx(0.5 * int_qxx2_spectral(u) -
                    k / (p + 2.0) * int_abs_pow(u, p + 2.0),
                0.0);
  });
  const TimeSignal db = bracket.derivative();
  const TimeSignal g0d = g0.derivative();
  const TimeSignal g1d = g1.derivative();
  TimeSignal res = TimeSignal::zero(q.t0, q.dt, q.slices.size());
  for (std::size_t m = 0; m < res.size(); ++m) {
    const double t = res.t(m);
    const cplx t2 = trace_at(traces, fb, 2, t);
    const cplx t3 = trace_at(traces, fb, 3, t);
    res.samples[m] = db.samples[m].real() -
                     std::real(t3 * std::conj(g0d.at_time(t))) +
                     std::real(t2 * std::conj(g1d.at_time(t)));
  }
  return res;
}

TimeSignal second_trace_identity_residual(const SpaceTimeField& q,
                                          const TimeSignal& g0,
                                          const TimeSignal& g1, cplx kappa,
                                          double p,
                                          const std::array<TimeSignal, 4>* traces) {
  const auto fb = traces ? std::array<TimeSignal, 4>{} : stencil_traces(q);
  const double k = kappa.real();
  TimeSignal moment = slice_signal(q, [](const GridFunction& u) {
    const auto ux = diff1(u.samples, u.dx);
    std::vector<double> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      a[i] = std::imag(u.samples[i] * std::conj(ux[i]));
    return cplx(trapz_real(a, u.dx), 0.0);
  });
  const TimeSignal dm = moment.derivative();
  const TimeSignal g0d = g0.derivative();
  TimeSignal res = TimeSignal::zero(q.t0, q.dt, q.slices.size());
  for (std::size_t m = 0; m < res.size(); ++m) {
    const double t = res.t(m);
    const cplx t2 = trace_at(traces, fb, 2, t);
    const cplx t3 = trace_at(traces, fb, 3, t);
    const cplx v0 = g0.at_time(t);
    res.samples[m] = 0.5 * std::norm(t2) - 0.5 * dm.samples[m].real() -
                     0.5 * std::imag(v0 * std::conj(g0d.at_time(t))) -
                     std::real(t3 * std::conj(g1.at_time(t))) +
                     k / (p + 2.0) * std::pow(std::abs(v0), p + 2.0);
  }
  return res;
}

TimeSignal third_trace_identity_residual(const SpaceTimeField& q,
                                         const TimeSignal& g0,
                                         const TimeSignal& g1, cplx kappa,
                                         double p,
                                         const std::array<TimeSignal, 4>* traces) {
  const auto fb = traces ? std::array<TimeSignal, 4>{} : stencil_traces(q);
  const double k = kappa.real();
  TimeSignal moment = slice_signal(q, [](const GridFunction& u) {
    const auto ux = diff1(u.samples, u.dx);
    const auto uxx = diff2(u.samples, u.dx);
    std::vector<double> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      a[i] = std::imag(uxx[i] * std::conj(ux[i]));
    return cplx(trapz_real(a, u.dx), 0.0);
  });
  TimeSignal nl1 = slice_signal(q, [p](const GridFunction& u) {
    const auto ux = diff1(u.samples, u.dx);
    const auto uxx = diff2(u.samples, u.dx);
    std::vector<double> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      a[i] = std::pow(std::abs(u.samples[i]), p) *
             std::real(ux[i] * std::conj(uxx[i]));
    return cplx(trapz_real(a, u.dx), 0.0);
  });
  TimeSignal nl2 = slice_signal(q, [p](const GridFunction& u) {
    const auto ux = diff1(u.samples, u.dx);
    const auto uxx = diff2(u.samples, u.dx);
    std::vector<double> a(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double mag = std::abs(u.samples[i]);
      if (p < 2.0 && mag < 1e-12) {
        a[i] = 0.0;
        continue;
      }
      a[i] = std::real(std::pow(mag, p - 2.0) * u.samples[i] * u.samples[i] *
                       std::conj(ux[i]) * std::conj(uxx[i]));
    }
    return cplx(trapz_real(a, u.dx), 0.0);
  });
  const TimeSignal dm = moment.derivative();
  const TimeSignal g0d = g0.derivative();
  const TimeSignal g1d = g1.derivative();
  TimeSignal res = TimeSignal::zero(q.t0, q.dt, q.slices.size());
  for (std::size_t m = 0; m < res.size(); ++m) {
    const double t = res.t(m);
    const cplx t2 = trace_at(traces, fb, 2, t);
    const cplx t3 = trace_at(traces, fb, 3, t);
    const cplx v0 = g0.at_time(t);
    const cplx v1 = g1.at_time(t);
    const cplx d0 = g0d.at_time(t);
    const cplx d1 = g1d.at_time(t);
    const double rhs = 0.5 * std::imag(d0 * std::conj(t2)) -
                       0.5 * std::imag(d1 * std::conj(v1)) -
                       0.5 * std::imag(t2 * std::conj(d0)) -
                       0.5 * dm.samples[m].real() +
                       k * std::real(std::pow(std::abs(v0), p) * v0 *
                                     std::conj(t2)) +
                       0.5 * k * (p + 2.0) * nl1.samples[m].real() +
                       0.5 * k * p * nl2.samples[m].real();
    res.samples[m] = 0.5 * std::norm(t3) - rhs;
  }
  return res;
}

EnergyReport energy_report(const SpaceTimeField& q, const TimeSignal& g0,
                           const TimeSignal& g1, cplx kappa, double p,
                           const std::array<TimeSignal, 4>* traces) {
  EnergyReport rep;
  rep.E = slice_signal(q, [kappa, p](const GridFunction& u) {
    return cplx(slice_energy(u, kappa, p), 0.0);
  });
  const auto own = traces ? std::array<TimeSignal, 4>{} : stencil_traces(q);
  const auto& tr = traces ? *traces : own;
  auto running = [](const TimeSignal& f) {
    TimeSignal out = TimeSignal::zero(f.t0, f.dt, f.size(), f.reg_exponent);
    double acc = 0.0;
    for (std::size_t m = 1; m < f.size(); ++m) {
      acc += 0.5 * f.dt *
             (std::norm(f.samples[m - 1]) + std::norm(f.samples[m]));
      out.samples[m] = cplx(std::sqrt(acc), 0.0);
    }
    return out;
  };
  rep.A = running(tr[3]);
  rep.B = running(tr[2]);
  rep.residuals["mass"] = l2_identity_residual(q, g0, g1, traces);
  rep.residuals["energy"] = h2_identity_residual(q, g0, g1, kappa, p, traces);
  rep.residuals["second_trace"] =
      second_trace_identity_residual(q, g0, g1, kappa, p, traces);
  rep.residuals["third_trace"] =
      third_trace_identity_residual(q, g0, g1, kappa, p, traces);
  return rep;
}

BoundChain global_bound_check(const EnergyReport& report, const IBVPData& data) {
  BoundChain ch;
  ch.regime_ok = data.kappa.imag() == 0.0 && data.kappa.real() <= 0.0 &&
                 data.p <= 2.0 + 1e-12;
  if (report.E.size() == 0) return ch;
  ch.e_initial = report.E.samples.front().real();
  ch.e_min = ch.e_initial;
  ch.e_max = ch.e_initial;
  for (const auto& v : report.E.samples) {
    ch.e_min = std::min(ch.e_min, v.real());
    ch.e_max = std::max(ch.e_max, v.real());
  }
  ch.energy_bounded = std::isfinite(ch.e_max);
  if (!ch.regime_ok) return ch;

  const double T = report.E.T;
  const double G0 = sobolev_norm_interval(restrict_signal(data.g0, T), 1.0);
  const double G1 = sobolev_norm_interval(restrict_signal(data.g1, T), 1.0);
  // conservation drift allowance so exactly-conserved runs fit c = 0
  const double drift = 1e-6 * std::max(1.0, ch.e_max);
  for (std::size_t m = 0; m < report.E.size(); ++m) {
    const double t = report.E.t(m);
    const double E = report.E.samples[m].real();
    const double A = report.A.at_time(t).real();
    const double B = report.B.at_time(t).real();
    const double excess = E - ch.e_initial - drift;
    if (excess > 0.0) {
      const double den = A * G0 + B * G1;
      ch.c_energy = den > 0.0
                        ? std::max(ch.c_energy, excess / den)
                        : std::numeric_limits<double>::infinity();
    }
    ch.c_second =
        std::max(ch.c_second, std::max(0.0, B * B - 3.0 * E - drift) / (1.0 + A));
    ch.c_third = std::max(
        ch.c_third,
        std::max(0.0, A * A - 2.0 * E - drift) /
            (1.0 + B + std::pow(std::max(E, 0.0), 0.5 * (data.p + 2.0))));
  }
  ch.energy_bounded = ch.energy_bounded && std::isfinite(ch.c_energy) &&
                      std::isfinite(ch.c_second) && std::isfinite(ch.c_third);
  ch.absorption_margin =
      data.p < 2.0 ? 1.0 : 1.0 - G0 * std::sqrt(ch.c_third);
  return ch;
}

}  // namespace bhse
