#include "bhse/fokas.hpp"

#include <algorithm>
#include <cmath>

#include "bhse/filon.hpp"
#include "bhse/fourier.hpp"

namespace bhse {

namespace {

struct RayCoef {
  Ray ray;
  double slope_sign;  // sign of the 1/k slope term relative to the value term
  cplx c0;            // shared channel coefficient on this sector boundary
};

// Right sector boundary carries 1 - i, left sector boundary 1 + i with the
// slope channel flipped; the x = 0 identities (value sums recover h0, slope
// sums recover h1) pin all four rows jointly.
const RayCoef ray_coefs[4] = {
    {Ray::gamma1, +1.0, cplx(1.0, -1.0)},
    {Ray::gamma2, +1.0, cplx(1.0, -1.0)},
    {Ray::gamma3, -1.0, cplx(1.0, 1.0)},
    {Ray::gamma4, -1.0, cplx(1.0, 1.0)},
};

}  // namespace

cplx boundary_transform(const TimeSignal& h, cplx c, double t_upper) {
  if (h.samples.size() < 2) return 0.0;
  std::size_t ib = h.samples.size() - 1;
  if (std::isfinite(t_upper)) {
    if (t_upper <= h.t0) return 0.0;
    double pos = (t_upper - h.t0) / h.dt;
    ib = std::min<std::size_t>(
        ib, static_cast<std::size_t>(std::llround(std::max(pos, 0.0))));
    if (ib == 0) return 0.0;
  }
  return filon_exp_integral(h.samples, h.t0, h.dt, c, 0, ib);
}

SbEvaluator::SbEvaluator(const TimeSignal& h0, const TimeSignal& h1,
                         double window, SbConfig cfg)
    : h0_(h0), h1_(h1), window_(window), cfg_(cfg) {
  if (!(window > 0.0)) throw DomainError("SbEvaluator: window must be > 0");
  const double split_edge = 2.0 * std::sqrt(2.0);
  if (cfg_.r_max < split_edge * 1.05)
    throw DomainError("SbEvaluator: r_max must exceed the cutoff support");
  if (h0_.samples.size() < 2 && h1_.samples.size() < 2)
    throw DomainError("SbEvaluator: no boundary data");

  // Spectral truncation: climb a dyadic ladder until the weighted transforms
  // fall below the relative floor. The slope channel weight mirrors the
  // |tau|^{-1/4} factor it carries in the integrand.
  auto weight = [&](double tau) {
    double w = std::abs(boundary_transform(h0_, -iu * tau)) +
               std::abs(boundary_transform(h0_, iu * tau));
    double damp = std::max(std::pow(std::max(tau, 1e-300), 0.25), 1.0);
    w += (std::abs(boundary_transform(h1_, -iu * tau)) +
          std::abs(boundary_transform(h1_, iu * tau))) /
         damp;
    return w;
  };
  const double cap = 4.0 * std::pow(cfg_.r_max, 4);
  double peak = weight(0.0);
  double tmax = 128.0;
  for (double tau = 1.0; tau <= cap; tau *= 2.0) {
    double w = weight(tau);
    peak = std::max(peak, w);
    if (w > cfg_.tau_floor * peak) tmax = std::max(tmax, 2.0 * tau);
  }
  tau_max_ = std::min(cap, tmax);

  build_spectral();
  build_near();
}

void SbEvaluator::prune(NodeSet& set) const {
  double top = 0.0;
  for (const cplx& c : set.coef) top = std::max(top, std::abs(c));
  if (top == 0.0) {
    set = NodeSet{};
    return;
  }
  NodeSet kept;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (std::abs(set.coef[i]) > cfg_.amp_floor * top)
      kept.push(set.k[i], set.rate[i], set.coef[i]);
  set = std::move(kept);
}

void SbEvaluator::build_spectral() {
  // |tau| nodes: double-exponential rule across the first dyadic panel where
  // the |tau|^{1/4} spatial factor has a cusp, adaptive panels beyond.
  std::vector<double> tn, tw;
  panel_rule(QuadRule::tanh_sinh, 0.0, 0.125, 0, tn, tw);
  {
    std::vector<double> xs, ws;
    PhaseSpan budget = [&](double a, double b) {
      return (cfg_.t_max + window_) * (b - a) +
             cfg_.x_max * (std::pow(b, 0.25) - std::pow(a, 0.25));
    };
    adaptive_radial_rule(0.125, tau_max_, budget, xs, ws);
    tn.insert(tn.end(), xs.begin(), xs.end());
    tw.insert(tw.end(), ws.begin(), ws.end());
  }
  for (std::size_t i = 0; i < tn.size(); ++i) {
    const double u = tn[i], wt = tw[i];
    // transforms at tau = -u (index 0) and tau = +u (index 1), shared by the
    // ray pairs
    const cplx hat0[2] = {boundary_transform(h0_, iu * u),
                          boundary_transform(h0_, -iu * u)};
    const double th = theta_cutoff(std::pow(u, 0.25));
    cplx hat1[2] = {0.0, 0.0};
    if (th < 1.0) {
      hat1[0] = boundary_transform(h1_, iu * u);
      hat1[1] = boundary_transform(h1_, -iu * u);
    }
    for (const RayCoef& rc : ray_coefs) {
      const bool neg = ray_tau_negative(rc.ray);
      const double tau = neg ? -u : u;
      const int idx = neg ? 0 : 1;
      const cplx k = fourth_root_on_ray(tau, rc.ray);
      const cplx rate = iu * tau;
      const cplx c_val = (wt / (4.0 * pi)) * rc.c0 * hat0[idx];
      cplx c_far = 0.0;
      if (th < 1.0)
        c_far = (wt / (4.0 * pi)) * rc.c0 * rc.slope_sign * (1.0 - th) *
                hat1[idx] / k;
      spectral_.push(k, rate, c_val + c_far);
      if (c_far != 0.0) far1_.push(k, rate, c_far);
    }
  }
  prune(spectral_);
  prune(far1_);
}

void SbEvaluator::build_near() {
  const double split_edge = 2.0 * std::sqrt(2.0);
  PhaseSpan budget = [&](double a, double b) {
    return cfg_.x_max * (b - a) +
           (cfg_.t_max + window_) * (std::pow(b, 4) - std::pow(a, 4));
  };
  std::vector<double> rn, rw;
  adaptive_radial_rule(0.0, split_edge, budget, rn, rw);
  for (std::size_t i = 0; i < rn.size(); ++i) {
    const double r = rn[i];
    const double th = theta_cutoff(r);
    if (th == 0.0) continue;
    const double r4 = r * r * r * r;
    const cplx hat1[2] = {boundary_transform(h1_, iu * r4),
                          boundary_transform(h1_, -iu * r4)};
    for (const RayCoef& rc : ray_coefs) {
      const bool neg = ray_tau_negative(rc.ray);
      const cplx d = ray_direction(rc.ray);
      const cplx k = d * r;
      const double k4 = neg ? -r4 : r4;
      const cplx w = ray_orientation(rc.ray) * d * rw[i];
      const cplx coef = -(1.0 / pi) * w * th * k * k * rc.c0 * rc.slope_sign *
                        hat1[neg ? 0 : 1];
      near_.push(k, iu * k4, coef);
    }
  }
  prune(near_);
}

void SbEvaluator::ensure_radial() const {
  if (radial_built_) return;
  const double split_edge = 2.0 * std::sqrt(2.0);
  const double r_trunc =
      std::min(cfg_.r_max, std::max(split_edge * 1.05,
                                    1.15 * std::pow(tau_max_, 0.25)));
  PhaseSpan budget = [&](double a, double b) {
    return cfg_.x_max * (b - a) +
           (cfg_.t_max + window_) * (std::pow(b, 4) - std::pow(a, 4));
  };
  std::vector<double> rn, rw;
  adaptive_radial_rule(0.0, r_trunc, budget, rn, rw);
  for (std::size_t i = 0; i < rn.size(); ++i) {
    const double r = rn[i];
    const double r4 = r * r * r * r;
    const cplx hat0[2] = {boundary_transform(h0_, iu * r4),
                          boundary_transform(h0_, -iu * r4)};
    const cplx hat1[2] = {boundary_transform(h1_, iu * r4),
                          boundary_transform(h1_, -iu * r4)};
    for (const RayCoef& rc : ray_coefs) {
      const bool neg = ray_tau_negative(rc.ray);
      const cplx d = ray_direction(rc.ray);
      const cplx k = d * r;
      const double k4 = neg ? -r4 : r4;
      const cplx w = ray_orientation(rc.ray) * d * rw[i];
      const int idx = neg ? 0 : 1;
      const cplx coef =
          -(1.0 / pi) * w *
          (k * k * k * rc.c0 * hat0[idx] +
           k * k * rc.c0 * rc.slope_sign * hat1[idx]);
      radial_.push(k, iu * k4, coef);
    }
  }
  prune(radial_);
  radial_built_ = true;
}

cplx SbEvaluator::accumulate(const NodeSet& set, double x, double t,
                             int deriv) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    cplx f = set.coef[i] * std::exp(iu * set.k[i] * x + set.rate[i] * t);
    for (int d = 0; d < deriv; ++d) f *= iu * set.k[i];
    acc += f;
  }
  return acc;
}

void SbEvaluator::accumulate_row(const NodeSet& set, double x0, double dx,
                                 std::size_t n, double t,
                                 std::vector<cplx>& out) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    cplx p = set.coef[i] * std::exp(set.rate[i] * t + iu * set.k[i] * x0);
    const cplx step = std::exp(iu * set.k[i] * dx);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] += p;
      p *= step;
    }
  }
}

cplx SbEvaluator::value(double x, double t, EvalStrategy strat) const {
  if (strat == EvalStrategy::radial_form) {
    ensure_radial();
    return accumulate(radial_, x, t, 0);
  }
  return accumulate(spectral_, x, t, 0) + accumulate(near_, x, t, 0);
}

void SbEvaluator::row(double x0, double dx, std::size_t n, double t,
                      EvalStrategy strat, std::vector<cplx>& out) const {
  out.assign(n, cplx(0.0));
  if (n == 0) return;
  if (strat == EvalStrategy::radial_form) {
    ensure_radial();
    accumulate_row(radial_, x0, dx, n, t, out);
  } else {
    accumulate_row(spectral_, x0, dx, n, t, out);
    accumulate_row(near_, x0, dx, n, t, out);
  }
}

cplx SbEvaluator::trace(int j, double t, EvalStrategy strat) const {
  if (j < 0 || j > 1)
    throw DomainError("SbEvaluator::trace: only orders 0 and 1 are analytic");
  if (strat == EvalStrategy::radial_form) {
    ensure_radial();
    return accumulate(radial_, 0.0, t, j);
  }
  return accumulate(spectral_, 0.0, t, j) + accumulate(near_, 0.0, t, j);
}

cplx SbEvaluator::near_value(double x, double t) const {
  return accumulate(near_, x, t, 0);
}

cplx SbEvaluator::far_slope_value(double x, double t) const {
  return accumulate(far1_, x, t, 0);
}

std::size_t SbEvaluator::node_count(EvalStrategy strat) const {
  if (strat == EvalStrategy::radial_form) {
    ensure_radial();
    return radial_.size();
  }
  return spectral_.size() + near_.size();
}

CauchyVanishReport verify_cauchy_vanishing(const GridFunction& q_final,
                                           double T,
                                           const std::vector<double>& xs,
                                           const std::vector<double>& ts,
                                           double r_max) {
  if (q_final.domain != Domain::half_line)
    throw DomainError("verify_cauchy_vanishing: half-line field required");
  CauchyVanishReport rep;
  rep.field_sup = q_final.sup_abs();
  double x_probe = 0.0;
  for (double x : xs) {
    if (x < 0.0) throw DomainError("verify_cauchy_vanishing: x must be >= 0");
    x_probe = std::max(x_probe, x);
  }
  for (double t : ts)
    if (t < 0.0 || t > T + 1e-12)
      throw DomainError("verify_cauchy_vanishing: t must lie in [0, T]");

  PhaseSpan budget = [&](double a, double b) {
    return (x_probe + q_final.x_max()) * (b - a) +
           std::max(T, 1e-9) * (std::pow(b, 4) - std::pow(a, 4));
  };

  struct Node {
    cplx k, coef;
    double k4;
  };
  auto gather = [&](Ray ra, Ray rb, bool right) {
    std::vector<Node> nodes;
    for (Ray ray : {ra, rb}) {
      ContourSegment seg{ray, r_max, QuadRule::gauss_legendre_panels};
      SegmentNodes sn = segment_nodes(seg, budget);
      for (std::size_t i = 0; i < sn.k.size(); ++i) {
        cplx k = sn.k[i];
        cplx bracket;
        if (right) {
          bracket = -(cplx(1.0, 1.0)) * halfline_transform(q_final, -iu * k) +
                    iu * halfline_transform(q_final, -k);
        } else {
          bracket = cplx(-1.0, 1.0) * halfline_transform(q_final, iu * k) -
                    iu * halfline_transform(q_final, -k);
        }
        double r4 = std::pow(sn.r[i], 4);
        nodes.push_back(
            {k, -sn.w[i] / (2.0 * pi) * bracket,
             ray_tau_negative(ray) ? -r4 : r4});
      }
    }
    return nodes;
  };

  auto sup_over_probes = [&](const std::vector<Node>& nodes) {
    double sup = 0.0;
    for (double t : ts) {
      for (double x : xs) {
        cplx acc = 0.0;
        for (const Node& nd : nodes)
          acc += nd.coef * std::exp(iu * nd.k * x + iu * nd.k4 * (t - T));
        sup = std::max(sup, std::abs(acc));
      }
    }
    return sup;
  };

  rep.right_sup = sup_over_probes(gather(Ray::gamma1, Ray::gamma2, true));
  rep.left_sup = sup_over_probes(gather(Ray::gamma3, Ray::gamma4, false));
  return rep;
}

void check_compatibility(const GridFunction& q0, const TimeSignal& g0,
                         const TimeSignal& g1, double s, double tol_rel) {
  if (!(s > 0.5 && s < 4.5))
    throw ConfigError(
        "regularity exponent must lie in (1/2, 9/2) for the solver");
  if (std::abs(s - 1.5) < 1e-12)
    throw ConfigError("regularity exponent 3/2 is excluded");
  if (q0.domain != Domain::half_line)
    throw DomainError("check_compatibility: half-line initial state required");
  if (g0.samples.empty() || q0.samples.empty())
    throw DomainError("check_compatibility: empty data");

  double scale = std::max({q0.sup_abs(), g0.sup_abs(), g1.sup_abs(), 1e-12});
  cplx corner_gap = g0.at_time(0.0) - q0.samples.front();
  if (std::abs(corner_gap) > tol_rel * scale)
    throw CompatibilityError(
        "value data must match the initial state at the corner");

  if (s > 1.5) {
    if (q0.samples.size() < 4)
      throw DomainError("check_compatibility: initial state too short");
    cplx q0p = (-3.0 * q0.samples[0] + 4.0 * q0.samples[1] - q0.samples[2]) /
               (2.0 * q0.dx);
    // the one-sided difference carries an O(dx^2 q''') truncation error
    double d3 = std::abs(-q0.samples[0] + 3.0 * q0.samples[1] -
                         3.0 * q0.samples[2] + q0.samples[3]) /
                (q0.dx * q0.dx * q0.dx);
    double dscale = std::max({std::abs(q0p), g1.sup_abs(), 1e-12});
    if (std::abs(g1.at_time(0.0) - q0p) >
        tol_rel * dscale + q0.dx * q0.dx * d3)
      throw CompatibilityError(
          "slope data must match the initial slope at the corner");
  }
}

namespace {

cplx onesided_deriv(const TimeSignal& h, int order) {
  const auto& f = h.samples;
  switch (order) {
    case 0:
      return f.at(0);
    case 1:
      return (-3.0 * f.at(0) + 4.0 * f.at(1) - f.at(2)) / (2.0 * h.dt);
    case 2:
      return (2.0 * f.at(0) - 5.0 * f.at(1) + 4.0 * f.at(2) - f.at(3)) /
             (h.dt * h.dt);
    default:
      throw DomainError("onesided_deriv: order too high");
  }
}

void require_vanishing(const TimeSignal& h, int count, double tol_rel,
                       const char* label) {
  double sup = h.sup_abs();
  if (sup == 0.0) return;
  for (int order = 0; order < count; ++order) {
    double scale = sup / std::pow(std::max(h.T, h.dt), order);
    if (std::abs(onesided_deriv(h, order)) > tol_rel * scale)
      throw CompatibilityError(std::string(label) +
                               ": time derivative of order " +
                               std::to_string(order) + " must vanish at t = 0");
  }
}

}  // namespace

void check_boundary_regularity(const TimeSignal& h0, const TimeSignal& h1,
                               double s, double tol_rel) {
  for (int m = 0; m < 3; ++m) {
    if (std::abs(s - (0.5 + 4.0 * m)) < 1e-12 ||
        std::abs(s - (1.5 + 4.0 * m)) < 1e-12)
      throw ConfigError("regularity exponent sits at an excluded value");
  }
  int n0 = s > 0.5 ? static_cast<int>(std::floor((s - 0.5) / 4.0)) + 1 : 0;
  int n1 = s > 1.5 ? static_cast<int>(std::floor((s - 1.5) / 4.0)) + 1 : 0;
  if (!h0.samples.empty() && n0 > 0)
    require_vanishing(h0, n0, tol_rel, "value data");
  if (!h1.samples.empty() && n1 > 0)
    require_vanishing(h1, n1, tol_rel, "slope data");
}

}  // namespace bhse
