#include "bhse/propagator.hpp"

#include <cmath>

#include "bhse/extension.hpp"

namespace bhse {

namespace {

cplx ix_pow(double xi, int j) {
  // (i xi)^j for j = 0..3.
  switch (j) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, xi};
    case 2: return {-xi * xi, 0.0};
    case 3: return {0.0, -xi * xi * xi};
    default: throw DomainError("trace order must be 0..3");
  }
}

}  // namespace

GridFunction propagate(const GridFunction& y0, double t) {
  SpectralField f = fourier_forward(y0);
  for (std::size_t m = 0; m < f.size(); ++m) {
    const double xi = f.xi(m);
    const double phase = xi * xi * xi * xi * t;
    f.coeffs[m] *= cplx{std::cos(phase), std::sin(phase)};
  }
  return fourier_inverse(f);
}

TimeSignal propagator_trace(const GridFunction& y0, int j, double dt,
                            std::size_t n, double reg) {
  const SpectralField f = fourier_forward(y0);
  std::vector<cplx> out(n);
  const double scale = f.dxi / (2.0 * pi);
  for (std::size_t m = 0; m < n; ++m) {
    const double t = static_cast<double>(m) * dt;
    cplx acc{0.0, 0.0};
    for (std::size_t q = 0; q < f.size(); ++q) {
      const double xi = f.xi(q);
      const double phase = xi * xi * xi * xi * t;
      acc += ix_pow(xi, j) * cplx{std::cos(phase), std::sin(phase)} *
             f.coeffs[q];
    }
    out[m] = acc * scale;
  }
  return TimeSignal(std::move(out), dt, reg, 0.0);
}

DuhamelStream::DuhamelStream(double x_min, double dx, std::size_t n, double dt)
    : x_min_(x_min), dx_(dx), dt_(dt), n_(n) {
  xi_.resize(n);
  const double dxi = 2.0 * pi / (static_cast<double>(n) * dx);
  const std::size_t half = n / 2;
  for (std::size_t m = 0; m < n; ++m)
    xi_[m] = (static_cast<double>(m) - static_cast<double>(half)) * dxi;
  integ_.assign(n, cplx{0.0, 0.0});
  prev_.assign(n, cplx{0.0, 0.0});
}

void DuhamelStream::push(const GridFunction& f_slice) {
  if (f_slice.size() != n_ || std::abs(f_slice.x_min - x_min_) > 1e-12 ||
      std::abs(f_slice.dx - dx_) > 1e-14)
    throw DomainError("DuhamelStream: slice grid mismatch");
  const SpectralField f = fourier_forward(f_slice);
  const double t = static_cast<double>(m_) * dt_;
  std::vector<cplx> cur(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    const double phase = -xi_[q] * xi_[q] * xi_[q] * xi_[q] * t;
    cur[q] = cplx{std::cos(phase), std::sin(phase)} * f.coeffs[q];
  }
  if (m_ > 0)
    for (std::size_t q = 0; q < n_; ++q)
      integ_[q] += 0.5 * dt_ * (prev_[q] + cur[q]);
  prev_ = std::move(cur);
  cur_t_ = t;
  ++m_;
}

GridFunction DuhamelStream::current_field() const {
  if (m_ == 0) throw DomainError("DuhamelStream: no slices pushed");
  SpectralField f;
  f.coeffs.resize(n_);
  const double dxi = 2.0 * pi / (static_cast<double>(n_) * dx_);
  f.dxi = dxi;
  f.xi_min = xi_.front();
  f.x0 = x_min_;
  for (std::size_t q = 0; q < n_; ++q) {
    const double phase = xi_[q] * xi_[q] * xi_[q] * xi_[q] * cur_t_;
    f.coeffs[q] =
        -iu * cplx{std::cos(phase), std::sin(phase)} * integ_[q];
  }
  return fourier_inverse(f);
}

cplx DuhamelStream::current_trace(int j) const {
  if (m_ == 0) throw DomainError("DuhamelStream: no slices pushed");
  const double dxi = 2.0 * pi / (static_cast<double>(n_) * dx_);
  cplx acc{0.0, 0.0};
  for (std::size_t q = 0; q < n_; ++q) {
    const double phase = xi_[q] * xi_[q] * xi_[q] * xi_[q] * cur_t_;
    acc += ix_pow(xi_[q], j) * cplx{std::cos(phase), std::sin(phase)} *
           integ_[q];
  }
  return -iu * acc * (dxi / (2.0 * pi));
}

GridFunction duhamel(const std::vector<GridFunction>& f_slices, double dt,
                     double t) {
  if (f_slices.empty()) throw DomainError("duhamel: no slices");
  const double pos = t / dt;
  const auto idx = static_cast<std::size_t>(std::llround(pos));
  if (std::abs(pos - static_cast<double>(idx)) > 0.5 + 1e-9 ||
      idx >= f_slices.size())
    throw DomainError("duhamel: t not within dt/2 of the slice grid");
  const GridFunction& g0 = f_slices.front();
  DuhamelStream stream(g0.x_min, g0.dx, g0.size(), dt);
  for (std::size_t m = 0; m <= idx; ++m) stream.push(f_slices[m]);
  return stream.current_field();
}

std::array<TimeSignal, 4> duhamel_traces(const std::vector<GridFunction>& f,
                                         double dt) {
  if (f.empty()) throw DomainError("duhamel_traces: no slices");
  const GridFunction& g0 = f.front();
  DuhamelStream stream(g0.x_min, g0.dx, g0.size(), dt);
  std::array<std::vector<cplx>, 4> out;
  for (auto& v : out) v.resize(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    stream.push(f[m]);
    for (int j = 0; j < 4; ++j) out[j][m] = stream.current_trace(j);
  }
  std::array<TimeSignal, 4> sig{
      TimeSignal(std::move(out[0]), dt), TimeSignal(std::move(out[1]), dt),
      TimeSignal(std::move(out[2]), dt), TimeSignal(std::move(out[3]), dt)};
  return sig;
}

std::size_t next_fast_size(std::size_t n) {
  auto smooth = [](std::size_t v) {
    for (std::size_t p : {2, 3, 5, 7})
      while (v % p == 0) v /= p;
    return v == 1;
  };
  while (!smooth(n)) ++n;
  return n;
}

BoxPlan plan_box(const GridFunction& u_half, double s, double T,
                 double pad_override) {
  if (u_half.domain != Domain::half_line)
    throw DomainError("plan_box: half_line input required");
  const double dx = u_half.dx;
  double pad;
  if (pad_override > 0.0) {
    pad = pad_override;
  } else {
    // Spectral spread estimate on a minimal embedding.
    GridFunction ext = extend_halfline(u_half, s);
    const std::size_t nfft = next_fast_size(2 * ext.size());
    std::vector<cplx> buf(nfft, cplx{0.0, 0.0});
    std::copy(ext.samples.begin(), ext.samples.end(), buf.begin());
    GridFunction padded(std::move(buf), ext.x_min, dx, Domain::whole_line);
    const SpectralField f = fourier_forward(padded);
    double peak = 0.0;
    for (const cplx& c : f.coeffs) peak = std::max(peak, std::abs(c));
    double xi_eff = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m)
      if (std::abs(f.coeffs[m]) > decay_floor * peak)
        xi_eff = std::max(xi_eff, std::abs(f.xi(m)));
    pad = 4.0 * xi_eff * xi_eff * xi_eff * T * 1.15 + 8.0;
  }
  BoxPlan plan;
  const double margin = std::min(5.0, u_half.x_max() / 6.0);
  plan.n_lo = static_cast<std::size_t>(std::ceil((margin + pad) / dx));
  plan.n_hi = static_cast<std::size_t>(std::ceil(u_half.x_max() / dx + pad / dx));
  const std::size_t fast = next_fast_size(plan.size());
  plan.n_hi += fast - plan.size();
  return plan;
}

}  // namespace bhse
