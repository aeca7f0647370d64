#include "bhse/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "bhse/filon.hpp"

namespace bhse {

namespace {

// Plan cache keyed by size. Planning is serialized (FFTW requirement);
// execution uses the new-array interface and is safe concurrently.
// FFTW_ESTIMATE keeps the chosen algorithm deterministic run to run.
class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans p;
    return p;
  }

  void forward(std::vector<cplx>& inout) { run(inout, FFTW_FORWARD); }
  void backward(std::vector<cplx>& inout) { run(inout, FFTW_BACKWARD); }

 private:
  struct Pair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  void run(std::vector<cplx>& inout, int sign) {
    const std::size_t n = inout.size();
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(mu_);
      Pair& p = plans_[n];
      if (!p.fwd) {
        std::vector<cplx> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                 flags);
        p.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                                 flags);
      }
      plan = (sign == FFTW_FORWARD) ? p.fwd : p.bwd;
    }
    auto* buf = reinterpret_cast<fftw_complex*>(inout.data());
    fftw_execute_dft(plan, buf, buf);
  }

  std::mutex mu_;
  std::map<std::size_t, Pair> plans_;
};

}  // namespace

SpectralField fourier_forward(const GridFunction& u) {
  if (u.domain != Domain::whole_line)
    throw DomainError("fourier_forward: whole_line grid required");
  const std::size_t n = u.size();
  std::vector<cplx> work(u.samples);
  FftPlans::instance().forward(work);

  SpectralField f;
  f.dxi = 2.0 * pi / (static_cast<double>(n) * u.dx);
  const std::size_t half = n / 2;
  f.xi_min = -static_cast<double>(half) * f.dxi;
  f.x0 = u.x_min;
  f.coeffs.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long mt = static_cast<long>(m) - static_cast<long>(half);
    const std::size_t j =
        static_cast<std::size_t>((mt + static_cast<long>(n)) %
                                 static_cast<long>(n));
    const double xi = f.xi(m);
    f.coeffs[m] = u.dx * std::exp(cplx{0.0, -xi * u.x_min}) * work[j];
  }
  return f;
}

GridFunction fourier_inverse(const SpectralField& f) {
  const std::size_t n = f.size();
  const std::size_t half = n / 2;
  std::vector<cplx> work(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long mt = static_cast<long>(m) - static_cast<long>(half);
    const std::size_t j =
        static_cast<std::size_t>((mt + static_cast<long>(n)) %
                                 static_cast<long>(n));
    const double xi = f.xi(m);
    work[j] = std::exp(cplx{0.0, xi * f.x0}) * f.coeffs[m];
  }
  FftPlans::instance().backward(work);
  const double dx = 2.0 * pi / (static_cast<double>(n) * f.dxi);
  const double scale = 1.0 / (static_cast<double>(n) * dx);
  for (cplx& v : work) v *= scale;
  return GridFunction(std::move(work), f.x0, dx, Domain::whole_line);
}

double sobolev_norm_line(const SpectralField& f, double s) {
  double acc = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    const double xi = f.xi(m);
    acc += std::pow(1.0 + xi * xi, s) * std::norm(f.coeffs[m]);
  }
  return std::sqrt(acc * f.dxi / (2.0 * pi));
}

double sobolev_norm_line(const GridFunction& u, double s) {
  return sobolev_norm_line(fourier_forward(u), s);
}

cplx halfline_transform(const GridFunction& u, cplx k) {
  if (k.imag() > 1e-12 * (1.0 + std::abs(k)))
    throw DomainError("halfline_transform: Im k must be <= 0");
  if (u.x_min < -1e-12)
    throw DomainError("halfline_transform: grid must start at x >= 0");
  // e^{-ikx} = e^{cx} with c = -ik, Re c = Im k <= 0.
  return filon_exp_integral(u.samples, u.x_min, u.dx, -iu * k);
}

}  // namespace bhse
