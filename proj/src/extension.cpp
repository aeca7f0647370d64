#include "bhse/extension.hpp"

#include <algorithm>
#include <cmath>

#include "bhse/fourier.hpp"

namespace bhse {

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double taper_down(double r, double r1, double r2) {
  if (!(r1 < r2)) throw DomainError("taper_down: need r1 < r2");
  return smoothstep((r2 - r) / (r2 - r1));
}

namespace {

// Margin sample at x = -i*dx by the 6-term reflection, tapered.
cplx reflect_sample(const std::vector<cplx>& u, std::size_t i, double dx,
                    double margin) {
  const double r = static_cast<double>(i) * dx;
  if (r >= margin) return {0.0, 0.0};
  cplx v{0.0, 0.0};
  for (std::size_t j = 1; j <= 6; ++j) v += hestenes_coeff[j - 1] * u[j * i];
  return v * taper_down(r, 0.2 * margin, margin);
}

std::vector<cplx> fd_derivative(const std::vector<cplx>& v, double h) {
  const std::size_t n = v.size();
  std::vector<cplx> d(n);
  d[0] = (-1.5 * v[0] + 2.0 * v[1] - 0.5 * v[2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (1.5 * v[n - 1] - 2.0 * v[n - 2] + 0.5 * v[n - 3]) / h;
  return d;
}

double trapz_norm_sq(const std::vector<cplx>& v, double h) {
  double acc = 0.0;
  for (const cplx& x : v) acc += std::norm(x);
  acc -= 0.5 * (std::norm(v.front()) + std::norm(v.back()));
  return acc * h;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double halfline_norm_direct(const GridFunction& u, double s) {
  if (s < 0.0) throw DomainError("halfline_norm_direct: s >= 0 required");
  const int k_lo = static_cast<int>(std::floor(s));
  const int k_hi = static_cast<int>(std::ceil(s));
  if (k_hi > 4) throw DomainError("halfline_norm_direct: s <= 4 required");

  auto integer_norm = [&](int k) {
    std::vector<cplx> d = u.samples;
    double acc = binom(k, 0) * trapz_norm_sq(d, u.dx);
    for (int m = 1; m <= k; ++m) {
      d = fd_derivative(d, u.dx);
      acc += binom(k, m) * trapz_norm_sq(d, u.dx);
    }
    return std::sqrt(acc);
  };

  const double n_lo = integer_norm(k_lo);
  if (k_hi == k_lo) return n_lo;
  const double n_hi = integer_norm(k_hi);
  const double theta = s - k_lo;
  if (n_lo == 0.0 || n_hi == 0.0) return 0.0;
  return std::pow(n_lo, 1.0 - theta) * std::pow(n_hi, theta);
}

GridFunction extend_halfline(const GridFunction& u, double s,
                             ExtensionReport* report) {
  if (u.domain != Domain::half_line)
    throw DomainError("extend_halfline: half_line input required");
  if (u.size() < 13) throw DomainError("extend_halfline: grid too short");
  const double sup = u.sup_abs();
  if (sup > 0.0 && std::abs(u.samples.back()) > decay_floor * sup &&
      std::abs(u.samples.back()) > 1e-14)
    throw DomainError("extend_halfline: data not decayed at x_max");

  const double margin = std::min(5.0, u.x_max() / 6.0);
  const std::size_t n_margin = static_cast<std::size_t>(margin / u.dx);

  std::vector<cplx> out(n_margin + u.size());
  for (std::size_t i = 1; i <= n_margin; ++i)
    out[n_margin - i] = reflect_sample(u.samples, i, u.dx, margin);
  std::copy(u.samples.begin(), u.samples.end(), out.begin() + n_margin);

  GridFunction ext(std::move(out), -static_cast<double>(n_margin) * u.dx, u.dx,
                   Domain::whole_line);
  if (report) {
    report->margin = margin;
    report->line_norm = sobolev_norm_line(ext, s);
    report->declared_norm = halfline_norm_direct(u, std::min(s, 4.0));
    report->c_ext = report->declared_norm > 0.0
                        ? report->line_norm / report->declared_norm
                        : (report->line_norm > 0.0 ? HUGE_VAL : 1.0);
  }
  return ext;
}

GridFunction embed_halfline(const GridFunction& u, double s, std::size_t n_lo,
                            std::size_t n_hi) {
  GridFunction ext = extend_halfline(u, s);
  const std::size_t n_margin =
      static_cast<std::size_t>(std::llround(-ext.x_min / ext.dx));
  if (n_lo < n_margin || n_hi + 1 < u.size())
    throw DomainError("embed_halfline: box does not contain the extension");
  std::vector<cplx> out(n_lo + n_hi + 1, cplx{0.0, 0.0});
  std::copy(ext.samples.begin(), ext.samples.end(),
            out.begin() + (n_lo - n_margin));
  return GridFunction(std::move(out), -static_cast<double>(n_lo) * u.dx, u.dx,
                      Domain::whole_line);
}

namespace {

void check_endpoint(const TimeSignal& p, const char* name) {
  if (p.reg_exponent > 0.5) {
    const double sup = p.sup_abs();
    if (std::abs(p.samples.front()) > std::max(1e-6 * sup, 1e-12))
      throw CompatibilityError(
          std::string("extend_boundary_data: ") + name +
          "(0) != 0; subtract the propagator traces first");
  }
}

TimeSignal extend_one(const TimeSignal& p, double T) {
  const std::size_t n = p.size() - 1;  // intervals
  const std::size_t n_arm = n / 6;
  if (n_arm == 0) throw DomainError("extend_boundary_data: signal too short");
  const double w_arm = static_cast<double>(n_arm) * p.dt;
  const std::size_t pad = static_cast<std::size_t>(std::ceil(0.5 * T / p.dt));
  const std::size_t n_grid2t = static_cast<std::size_t>(
      std::llround(2.0 * T / p.dt));
  const std::size_t count = pad + n_grid2t + pad + 1;

  std::vector<cplx> out(count, cplx{0.0, 0.0});
  for (std::size_t i = 0; i <= n; ++i) out[pad + i] = p.samples[i];
  for (std::size_t i = 1; i <= n_arm; ++i) {
    const double uoff = static_cast<double>(i) * p.dt;
    if (uoff >= w_arm) break;
    cplx v{0.0, 0.0};
    for (std::size_t j = 1; j <= 6; ++j)
      v += hestenes_coeff[j - 1] * p.samples[n - j * i];
    out[pad + n + i] = v * taper_down(uoff, 0.2 * w_arm, w_arm);
  }
  return TimeSignal(std::move(out), p.dt, p.reg_exponent,
                    -static_cast<double>(pad) * p.dt);
}

}  // namespace

std::pair<TimeSignal, TimeSignal> extend_boundary_data(const TimeSignal& p0,
                                                       const TimeSignal& p1,
                                                       double T) {
  if (std::abs(p0.t0) > 1e-12 || std::abs(p1.t0) > 1e-12)
    throw DomainError("extend_boundary_data: signals must start at t=0");
  if (std::abs(p0.T - T) > 1e-9 * std::max(1.0, T) ||
      std::abs(p1.T - T) > 1e-9 * std::max(1.0, T))
    throw DomainError("extend_boundary_data: signal span != T");
  if (std::abs(p0.dt - p1.dt) > 1e-14)
    throw DomainError("extend_boundary_data: mismatched sample steps");
  check_endpoint(p0, "p0");
  check_endpoint(p1, "p1");
  return {extend_one(p0, T), extend_one(p1, T)};
}

namespace {

double ramp_norm(cplx value, double w, double dt, double r) {
  if (std::abs(value) == 0.0) return 0.0;
  const std::size_t n_half =
      static_cast<std::size_t>(std::ceil((w + 1.0) / dt));
  std::vector<cplx> s(2 * n_half + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = (static_cast<double>(i) - static_cast<double>(n_half)) * dt;
    s[i] = taper_down(std::abs(t), 0.2 * w, w);
  }
  GridFunction bump(std::move(s), -static_cast<double>(n_half) * dt, dt,
                    Domain::whole_line);
  return std::abs(value) * sobolev_norm_line(bump, r);
}

}  // namespace

double sobolev_norm_interval(const TimeSignal& g, double r,
                             IntervalNormInfo* info) {
  const std::size_t n = g.size() - 1;
  if (n < 2) throw DomainError("sobolev_norm_interval: signal too short");
  const double pad_t = std::max(0.5 * g.T, 1.0);
  const std::size_t pad = static_cast<std::size_t>(std::ceil(pad_t / g.dt));

  if (info) {
    info->left_value = g.samples.front();
    info->right_value = g.samples.back();
    info->ramp_correction = 0.0;
  }

  if (r <= 0.5) {
    std::vector<cplx> out(pad + g.size() + pad, cplx{0.0, 0.0});
    std::copy(g.samples.begin(), g.samples.end(), out.begin() + pad);
    GridFunction ext(std::move(out),
                     g.t0 - static_cast<double>(pad) * g.dt, g.dt,
                     Domain::whole_line);
    return sobolev_norm_line(ext, r);
  }

  if (n < 13) throw DomainError("sobolev_norm_interval: signal too short for r > 1/2");
  const double w = std::min(0.5 * g.T, 2.0);
  const cplx vl = g.samples.front();
  const cplx vr = g.samples.back();
  std::vector<cplx> rem(g.samples);
  for (std::size_t i = 0; i < rem.size(); ++i) {
    const double t = static_cast<double>(i) * g.dt;
    rem[i] -= vl * taper_down(t, 0.2 * w, w);
    rem[i] -= vr * taper_down(g.T - t, 0.2 * w, w);
  }

  const std::size_t n_arm = n / 6;
  const double w_arm = static_cast<double>(n_arm) * g.dt;
  std::vector<cplx> out(pad + g.size() + pad, cplx{0.0, 0.0});
  std::copy(rem.begin(), rem.end(), out.begin() + pad);
  for (std::size_t i = 1; i <= n_arm; ++i) {
    const double uoff = static_cast<double>(i) * g.dt;
    if (uoff >= w_arm) break;
    const double chi = taper_down(uoff, 0.2 * w_arm, w_arm);
    cplx lv{0.0, 0.0}, rv{0.0, 0.0};
    for (std::size_t j = 1; j <= 6; ++j) {
      lv += hestenes_coeff[j - 1] * rem[j * i];
      rv += hestenes_coeff[j - 1] * rem[n - j * i];
    }
    out[pad - i] = lv * chi;
    out[pad + n + i] = rv * chi;
  }
  GridFunction ext(std::move(out), g.t0 - static_cast<double>(pad) * g.dt,
                   g.dt, Domain::whole_line);
  const double core = sobolev_norm_line(ext, r);
  const double correction =
      ramp_norm(vl, w, g.dt, r) + ramp_norm(vr, w, g.dt, r);
  if (info) info->ramp_correction = correction;
  return core + correction;
}

}  // namespace bhse
