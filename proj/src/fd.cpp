// Scheme notes. Unknowns are the interior nodes x_j = j dx, j = 1..nx-1;
// x_0 carries q(0,t) exactly and x_nx is clamped to zero. The left ghost is
// eliminated per FdClosure: the symmetric fold uses the centered slope
// q_{-1} = q_1 - 2 dx q_x(0,t), keeping the pentadiagonal matrix real
// symmetric so Crank-Nicolson is a Cayley transform and zero-data runs
// conserve the discrete l2 norm exactly (midpoint nonlinearity included,
// kappa real); the extrapolated closure instead builds the ghost from a
// quartic corner Taylor model whose fourth derivative comes from the PDE at
// x = 0, which costs one asymmetric row but removes the O(1/dx) consistency
// defect that otherwise leaves a dx^3 error layer at the wall.
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "bhse/fd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bhse/types.hpp"

namespace bhse {
namespace {

// Five full-length diagonals of a pentadiagonal matrix: lo2[j] = A(j,j-2)
// through up2[j] = A(j,j+2), out-of-range slots ignored.
struct Penta {
  std::vector<double> lo2, lo1, diag, up1, up2;

  explicit Penta(std::size_t n) : lo2(n), lo1(n), diag(n), up1(n), up2(n) {}

  void apply(cplx scale, cplx shift, const std::vector<cplx>& q,
             std::vector<cplx>& out) const {
    const std::size_t n = diag.size();
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = diag[j] * q[j];
      if (j >= 1) acc += lo1[j] * q[j - 1];
      if (j >= 2) acc += lo2[j] * q[j - 2];
      if (j + 1 < n) acc += up1[j] * q[j + 1];
      if (j + 2 < n) acc += up2[j] * q[j + 2];
      out[j] = shift * q[j] + scale * acc;
    }
  }
};

// Complex LU on LAPACK band storage with kl = ku = 2 (ldab = 7).
class Banded {
 public:
  explicit Banded(std::size_t n) : n_(n), ab_(7 * n), ipiv_(n) {}

  // M = shift I + scale A + diag(extra)
  void assemble(const Penta& a, cplx scale, cplx shift,
                const std::vector<cplx>& extra = {}) {
    std::fill(ab_.begin(), ab_.end(), cplx{});
    for (std::size_t j = 0; j < n_; ++j) {
      cplx d = shift + scale * a.diag[j];
      if (!extra.empty()) d += extra[j];
      set(j, j, d);
      if (j >= 1) set(j, j - 1, scale * a.lo1[j]);
      if (j >= 2) set(j, j - 2, scale * a.lo2[j]);
      if (j + 1 < n_) set(j, j + 1, scale * a.up1[j]);
      if (j + 2 < n_) set(j, j + 2, scale * a.up2[j]);
    }
  }

  void factor() {
    const auto n = static_cast<lapack_int>(n_);
    const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, 2, 2,
                                           ab_.data(), 7, ipiv_.data());
    if (info != 0)
      throw Error("fd: band factorization failed, info=" +
                  std::to_string(info));
  }

  void solve(std::vector<cplx>& b) const {
    const auto n = static_cast<lapack_int>(n_);
    const lapack_int info =
        LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, 2, 2, 1, ab_.data(), 7,
                       ipiv_.data(), b.data(), n);
    if (info != 0)
      throw Error("fd: band solve failed, info=" + std::to_string(info));
  }

 private:
  void set(std::size_t i, std::size_t j, cplx v) {
    // Column-major band layout: A(i,j) sits in row kl+ku+i-j of column j.
    ab_[7 * j + (4 + i) - j] = v;
  }

  std::size_t n_;
  std::vector<cplx> ab_;
  std::vector<lapack_int> ipiv_;
};

double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

FdSolution solve_fd(const GridFunction& q0, const TimeSignal& g0,
                    const TimeSignal& g1, double T, const FdConfig& cfg) {
  if (!(T > 0.0)) throw ConfigError("solve_fd: horizon T must be positive");
  if (!(cfg.L > 0.0)) throw ConfigError("solve_fd: L must be positive");
  if (cfg.nx < 8) throw ConfigError("solve_fd: nx must be at least 8");
  if (cfg.nt < 1) throw ConfigError("solve_fd: nt must be at least 1");
  if (!(cfg.p > 0.0)) throw ConfigError("solve_fd: power p must be positive");
  if (q0.x_min > 1e-12) throw DomainError("solve_fd: q0 must cover x = 0");
  const double slack = 1e-9 * std::max(g0.dt, g1.dt);
  if (g0.t0 > slack || g1.t0 > slack || g0.t_end() < T - slack ||
      g1.t_end() < T - slack)
    throw DomainError("solve_fd: boundary signals must cover [0, T]");

  const std::size_t nx = cfg.nx, nt = cfg.nt;
  const double dx = cfg.L / static_cast<double>(nx);
  const double dt = T / static_cast<double>(nt);
  const double ix4 = 1.0 / (dx * dx * dx * dx);
  const std::size_t n = nx - 1;

  const TimeSignal g0d = g0.derivative();
  const bool nonlinear = cfg.kappa != 0.0;
  auto fnl = [&](cplx v) {
    return cfg.kappa * std::pow(std::norm(v), 0.5 * cfg.p) * v;
  };
  const bool extrap = cfg.closure == FdClosure::extrapolated;

  // Fourth difference with the ghost folded in. Interior rows are
  // (1,-4,6,-4,1)/dx^4; the clamped right end mirrors to (1,-4,7). The left
  // row is (7,-4,1) for the symmetric fold or (9,-4.5,1) for the quartic
  // ghost, whose collocation term joins the boundary source instead.
  Penta a(n);
  for (std::size_t j = 0; j < n; ++j) {
    a.diag[j] = 6.0 * ix4;
    a.lo1[j] = a.up1[j] = -4.0 * ix4;
    a.lo2[j] = a.up2[j] = ix4;
  }
  a.diag[0] = (extrap ? 9.0 : 7.0) * ix4;
  a.up1[0] = (extrap ? -4.5 : -4.0) * ix4;
  a.diag[n - 1] = 7.0 * ix4;

  const cplx idt = iu / dt;
  Banded mplus(n);
  mplus.assemble(a, 0.5, idt);
  mplus.factor();

  // out = (i/dt) q - (A q)/2
  auto apply_mminus = [&](const std::vector<cplx>& q, std::vector<cplx>& out) {
    a.apply(-0.5, idt, q, out);
  };

  std::vector<cplx> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j + 1) * dx;
    q[j] = x <= q0.x_max() + 1e-12 ? q0.interp(std::min(x, q0.x_max()))
                                   : cplx{};
  }

  FdSolution sol;
  const std::size_t stride =
      cfg.store_every ? cfg.store_every
                      : std::max<std::size_t>(1, nt / 100);
  sol.field.dt = static_cast<double>(stride) * dt;
  sol.field.t0 = 0.0;

  auto make_slice = [&](const std::vector<cplx>& qi, double t) {
    std::vector<cplx> s(nx + 1);
    s[0] = g0.at_time(t);
    std::copy(qi.begin(), qi.end(), s.begin() + 1);
    s[nx] = cplx{};
    return GridFunction(std::move(s), 0.0, dx, Domain::half_line);
  };

  std::array<std::vector<cplx>, 4> tr;
  for (auto& v : tr) v.reserve(nt + 1);
  auto push_traces = [&](const std::vector<cplx>& qi, double t) {
    const cplx b0 = g0.at_time(t);
    const cplx b1 = g1.at_time(t);
    const cplx q1 = qi[0], q2 = qi[1];
    const cplx coll = fnl(b0) - iu * g0d.at_time(t);  // q_xxxx(0,t) from the PDE
    // Corner Taylor solve: q(0), q_x(0), q_xxxx(0) are known, so the first
    // two interior values pin q_xx(0) and q_xxx(0). Exact through degree 4.
    const cplx r1 = q1 - b0 - dx * b1 - (dx * dx * dx * dx / 24.0) * coll;
    const cplx r2 =
        q2 - b0 - 2.0 * dx * b1 - (2.0 * dx * dx * dx * dx / 3.0) * coll;
    const cplx d3 = 1.5 * (r2 - 4.0 * r1) / (dx * dx * dx);
    const cplx d2 = (2.0 / (dx * dx)) * (r1 - (dx * dx * dx / 6.0) * d3);
    tr[0].push_back(b0);
    tr[1].push_back(b1);
    tr[2].push_back(d2);
    tr[3].push_back(d3);
  };

  auto mass = [&](const std::vector<cplx>& qi, double t) {
    double acc = 0.5 * std::norm(g0.at_time(t));
    for (const cplx& z : qi) acc += std::norm(z);
    return dx * acc;
  };

  auto source = [&](double t, cplx& s1, cplx& s2) {
    const cplx b0 = g0.at_time(t);
    const cplx b1 = g1.at_time(t);
    if (extrap) {
      const cplx coll = fnl(b0) - iu * g0d.at_time(t);
      s1 = (-3.0 * dx * b1 - 5.5 * b0) * ix4 + 0.25 * coll;
    } else {
      s1 = (-2.0 * dx * b1 - 4.0 * b0) * ix4;
    }
    s2 = b0 * ix4;
  };

  push_traces(q, 0.0);
  sol.field.slices.push_back(make_slice(q, 0.0));
  const double mass0 = mass(q, 0.0);
  sol.far_leak = std::abs(q[n - 1]);
  sol.iter_peak = 0;

  std::vector<cplx> rhs_lin(n), rhs(n), qnew(n), mid(n);
  std::vector<cplx> wdiag(nonlinear ? n : 0);
  Banded mshift(nonlinear && cfg.solver == FdNonlinearSolver::newton ? n : 1);

  for (std::size_t step = 0; step < nt; ++step) {
    const double ta = static_cast<double>(step) * dt;
    const double tb = static_cast<double>(step + 1) * dt;
    apply_mminus(q, rhs_lin);
    cplx sa1, sa2, sb1, sb2;
    source(ta, sa1, sa2);
    source(tb, sb1, sb2);
    rhs_lin[0] -= 0.5 * (sa1 + sb1);
    rhs_lin[1] -= 0.5 * (sa2 + sb2);

    if (!nonlinear) {
      rhs = rhs_lin;
      mplus.solve(rhs);
      qnew = rhs;
    } else {
      qnew = q;
      bool converged = false;
      for (int it = 0; it < cfg.iter_max; ++it) {
        for (std::size_t j = 0; j < n; ++j) mid[j] = 0.5 * (q[j] + qnew[j]);
        if (cfg.solver == FdNonlinearSolver::fixed_point) {
          for (std::size_t j = 0; j < n; ++j)
            rhs[j] = rhs_lin[j] + fnl(mid[j]);
          mplus.solve(rhs);
        } else {
          // shift the frozen-modulus term to the left-hand diagonal
          for (std::size_t j = 0; j < n; ++j)
            wdiag[j] = -0.5 * cfg.kappa *
                       std::pow(std::norm(mid[j]), 0.5 * cfg.p);
          mshift.assemble(a, 0.5, idt, wdiag);
          mshift.factor();
          for (std::size_t j = 0; j < n; ++j)
            rhs[j] = rhs_lin[j] - wdiag[j] * q[j];
          mshift.solve(rhs);
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          delta = std::max(delta, std::abs(rhs[j] - qnew[j]));
        qnew.swap(rhs);
        sol.iter_peak = std::max(sol.iter_peak, it + 1);
        if (delta <= cfg.iter_tol * std::max(1.0, sup_abs(qnew))) {
          converged = true;
          break;
        }
      }
      if (!converged)
        throw Error("solve_fd: nonlinear iteration stalled at t=" +
                    std::to_string(tb) + "; reduce dt or switch solver");
    }

    q.swap(qnew);
    push_traces(q, tb);
    sol.far_leak = std::max(sol.far_leak, std::abs(q[n - 1]));
    sol.mass_drift = std::max(sol.mass_drift, std::abs(mass(q, tb) - mass0));
    if ((step + 1) % stride == 0)
      sol.field.slices.push_back(make_slice(q, tb));
  }

  sol.final_state = make_slice(q, T);
  for (int j = 0; j < 4; ++j)
    sol.traces[j] = TimeSignal(std::move(tr[j]), dt, 0.0, 0.0);
  return sol;
}

FdConvergence fd_convergence_study(const std::function<cplx(double)>& q0,
                                   const std::function<cplx(double)>& g0,
                                   const std::function<cplx(double)>& g1,
                                   double T, const FdConfig& base,
                                   int levels) {
  if (levels < 2)
    throw ConfigError("fd_convergence_study: need at least two levels");
  std::vector<GridFunction> finals;
  finals.reserve(static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l) {
    FdConfig cfg = base;
    cfg.nx = base.nx << l;
    cfg.nt = base.nt << l;
    cfg.store_every = cfg.nt;  // only the endpoints matter here
    const double dxl = cfg.L / static_cast<double>(cfg.nx);
    const double dtl = T / static_cast<double>(cfg.nt);
    const auto q0g = GridFunction::sampled(0.0, dxl, cfg.nx + 1,
                                           Domain::half_line, q0);
    const auto g0s = TimeSignal::sampled(0.0, dtl, cfg.nt + 1, g0);
    const auto g1s = TimeSignal::sampled(0.0, dtl, cfg.nt + 1, g1);
    finals.push_back(solve_fd(q0g, g0s, g1s, T, cfg).final_state);
  }

  FdConvergence out;
  for (int l = 0; l + 1 < levels; ++l) {
    const auto& c = finals[static_cast<std::size_t>(l)];
    const auto& f = finals[static_cast<std::size_t>(l) + 1];
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      num += std::norm(c.samples[j] - f.samples[2 * j]);
      den += std::norm(f.samples[2 * j]);
    }
    out.errors.push_back(std::sqrt(num / std::max(den, 1e-300)));
  }
  const std::size_t m = out.errors.size();
  if (m >= 2 && out.errors[m - 1] > 0.0)
    out.observed_order = std::log2(out.errors[m - 2] / out.errors[m - 1]);
  return out;
}

}  // namespace bhse
