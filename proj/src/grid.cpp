#include "bhse/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bhse {

namespace {
void check_step(double step, const char* what) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw DomainError(std::string(what) + ": step must be positive and finite");
}
}  // namespace

GridFunction::GridFunction(std::vector<cplx> s, double x0, double step,
                           Domain dom)
    : samples(std::move(s)), x_min(x0), dx(step), domain(dom) {
  check_step(step, "GridFunction");
  if (samples.empty()) throw DomainError("GridFunction: empty sample vector");
  if (domain == Domain::half_line && std::abs(x_min) > 1e-12 * dx)
    throw DomainError("GridFunction: half_line grid must start at x=0");
}

GridFunction GridFunction::sampled(double x0, double step, std::size_t n,
                                   Domain dom,
                                   const std::function<cplx(double)>& f) {
  std::vector<cplx> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = f(x0 + static_cast<double>(i) * step);
  return GridFunction(std::move(s), x0, step, dom);
}

double GridFunction::sup_abs() const {
  double m = 0.0;
  for (const cplx& v : samples) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::l2_sq() const {
  double acc = 0.0;
  for (const cplx& v : samples) acc += std::norm(v);
  acc -= 0.5 * (std::norm(samples.front()) + std::norm(samples.back()));
  return acc * dx;
}

bool GridFunction::decayed_at_ends(double floor_rel) const {
  const double cap = floor_rel * sup_abs();
  return std::abs(samples.front()) <= cap && std::abs(samples.back()) <= cap;
}

cplx GridFunction::interp(double xq) const {
  const double u = (xq - x_min) / dx;
  if (u < -1e-9 || u > static_cast<double>(samples.size() - 1) + 1e-9)
    throw DomainError("GridFunction::interp: query outside grid");
  const double uc = std::clamp(u, 0.0, static_cast<double>(samples.size() - 1));
  const std::size_t i =
      std::min(static_cast<std::size_t>(uc), samples.size() - 2);
  const double w = uc - static_cast<double>(i);
  return (1.0 - w) * samples[i] + w * samples[i + 1];
}

TimeSignal::TimeSignal(std::vector<cplx> s, double step, double reg,
                       double start)
    : samples(std::move(s)), dt(step), reg_exponent(reg), t0(start) {
  check_step(step, "TimeSignal");
  if (samples.empty()) throw DomainError("TimeSignal: empty sample vector");
  T = static_cast<double>(samples.size() - 1) * dt;
}

TimeSignal TimeSignal::sampled(double start, double step, std::size_t n,
                               const std::function<cplx(double)>& f,
                               double reg) {
  std::vector<cplx> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = f(start + static_cast<double>(i) * step);
  return TimeSignal(std::move(s), step, reg, start);
}

TimeSignal TimeSignal::zero(double start, double step, std::size_t n,
                            double reg) {
  return TimeSignal(std::vector<cplx>(n, cplx{0.0, 0.0}), step, reg, start);
}

double TimeSignal::sup_abs() const {
  double m = 0.0;
  for (const cplx& v : samples) m = std::max(m, std::abs(v));
  return m;
}

cplx TimeSignal::at_time(double tq) const {
  const double u = (tq - t0) / dt;
  if (u < -1e-9 || u > static_cast<double>(samples.size() - 1) + 1e-9)
    return {0.0, 0.0};
  const double uc = std::clamp(u, 0.0, static_cast<double>(samples.size() - 1));
  const std::size_t i =
      std::min(static_cast<std::size_t>(uc), samples.size() - 2);
  const double w = uc - static_cast<double>(i);
  return (1.0 - w) * samples[i] + w * samples[i + 1];
}

TimeSignal TimeSignal::derivative() const {
  const std::size_t n = samples.size();
  std::vector<cplx> d(n);
  if (n == 1) {
    d[0] = 0.0;
  } else if (n == 2) {
    d[0] = d[1] = (samples[1] - samples[0]) / dt;
  } else {
    d[0] = (-1.5 * samples[0] + 2.0 * samples[1] - 0.5 * samples[2]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i)
      d[i] = (samples[i + 1] - samples[i - 1]) / (2.0 * dt);
    d[n - 1] =
        (1.5 * samples[n - 1] - 2.0 * samples[n - 2] + 0.5 * samples[n - 3]) /
        dt;
  }
  return TimeSignal(std::move(d), dt, reg_exponent, t0);
}

double SpaceTimeField::sup_abs() const {
  double m = 0.0;
  for (const GridFunction& g : slices) m = std::max(m, g.sup_abs());
  return m;
}

}  // namespace bhse
