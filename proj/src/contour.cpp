#include "bhse/contour.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bhse/extension.hpp"

namespace bhse {

namespace {

constexpr double phase_cap = 54.0;  // order formula saturates here
constexpr int order_min = 12;
constexpr int order_max = 48;

int order_for_phase(double phase) {
  double n = order_min + phase / 1.5;
  return static_cast<int>(std::clamp(n, double(order_min), double(order_max)));
}

std::map<int, std::pair<std::vector<double>, std::vector<double>>> gl_cache;
std::mutex gl_mutex;

}  // namespace

cplx ray_direction(Ray ray) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (ray) {
    case Ray::gamma1: return {s, s};
    case Ray::gamma2: return {0.0, 1.0};
    case Ray::gamma3: return {-s, s};
    case Ray::gamma4: return {-1.0, 0.0};
  }
  throw DomainError("unknown ray");
}

double ray_orientation(Ray ray) {
  switch (ray) {
    case Ray::gamma1: return 1.0;
    case Ray::gamma2: return -1.0;
    case Ray::gamma3: return 1.0;
    case Ray::gamma4: return -1.0;
  }
  throw DomainError("unknown ray");
}

bool ray_tau_negative(Ray ray) {
  return ray == Ray::gamma1 || ray == Ray::gamma3;
}

cplx fourth_root_on_ray(double tau, Ray ray) {
  if (ray_tau_negative(ray)) {
    if (tau > 0.0) throw DomainError("tau must be <= 0 on this ray");
  } else {
    if (tau < 0.0) throw DomainError("tau must be >= 0 on this ray");
  }
  return ray_direction(ray) * std::pow(std::abs(tau), 0.25);
}

double theta_cutoff(double abs_k) {
  const double s2 = std::sqrt(2.0);
  return taper_down(abs_k, s2, 2.0 * s2);
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(gl_mutex);
    auto it = gl_cache.find(n);
    if (it != gl_cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence, then one Newton step.
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
      double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;  // ascending order
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  std::lock_guard<std::mutex> lock(gl_mutex);
  gl_cache.emplace(n, std::make_pair(nodes, weights));
}

namespace {

void tanh_sinh_rule(double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  const double h = 0.125;
  const double rad = 0.5 * (b - a);
  nodes.clear();
  weights.clear();
  for (int j = -40; j <= 40; ++j) {
    double u = j * h;
    double sh = 0.5 * pi * std::sinh(u);
    double ch = std::cosh(sh);
    double w = h * rad * 0.5 * pi * std::cosh(u) / (ch * ch);
    if (w < 1e-22 * rad) continue;
    // offsets from the endpoints stay positive where tanh would round to +-1
    double x = sh < 0.0 ? a + rad * (2.0 / (1.0 + std::exp(-2.0 * sh)))
                        : b - rad * (2.0 / (1.0 + std::exp(2.0 * sh)));
    nodes.push_back(x);
    weights.push_back(w);
  }
}

void gl_on_interval(double a, double b, int order, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  std::vector<double> xs, ws;
  gauss_legendre(order, xs, ws);
  double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    nodes.push_back(mid + rad * xs[i]);
    weights.push_back(rad * ws[i]);
  }
}

void emit_panel(double a, double b, const PhaseSpan& phase, int depth,
                std::vector<double>& nodes, std::vector<double>& weights) {
  double span = phase ? phase(a, b) : 0.0;
  if (span > phase_cap && depth < 40 && b - a > 1e-9) {
    double mid = 0.5 * (a + b);
    emit_panel(a, mid, phase, depth + 1, nodes, weights);
    emit_panel(mid, b, phase, depth + 1, nodes, weights);
    return;
  }
  gl_on_interval(a, b, order_for_phase(span), nodes, weights);
}

}  // namespace

void panel_rule(QuadRule rule, double a, double b, int order_hint,
                std::vector<double>& nodes, std::vector<double>& weights) {
  if (!(b > a)) throw DomainError("panel_rule: empty interval");
  if (rule == QuadRule::tanh_sinh) {
    tanh_sinh_rule(a, b, nodes, weights);
  } else {
    gl_on_interval(a, b, std::clamp(order_hint, order_min, order_max), nodes,
                   weights);
  }
}

void adaptive_radial_rule(double a, double b, const PhaseSpan& phase,
                          std::vector<double>& nodes,
                          std::vector<double>& weights) {
  if (!(b > a) || a < 0.0) throw DomainError("adaptive_radial_rule: bad range");
  nodes.clear();
  weights.clear();
  // Dyadic skeleton about r = 1, doubling upward; each panel may split
  // further under the phase budget.
  double lo = a;
  double edge = 0.125;
  if (a >= 0.125) {
    edge = 0.125;
    while (edge * 2.0 <= a) edge *= 2.0;
    edge *= 2.0;
  }
  while (lo < b) {
    double hi = std::min(edge, b);
    if (hi > lo) emit_panel(lo, hi, phase, 0, nodes, weights);
    lo = hi;
    edge *= 2.0;
  }
}

SegmentNodes segment_nodes(const ContourSegment& seg, const PhaseSpan& phase) {
  if (!(seg.r_max > 0.0)) throw DomainError("segment_nodes: r_max must be > 0");
  std::vector<double> rs, ws;
  if (seg.rule == QuadRule::tanh_sinh) {
    // Same skeleton, double-exponential rule inside each panel.
    double lo = 0.0, edge = 0.125;
    while (lo < seg.r_max) {
      double hi = std::min(edge, seg.r_max);
      if (hi > lo) {
        std::vector<double> xs, vs;
        tanh_sinh_rule(lo, hi, xs, vs);
        rs.insert(rs.end(), xs.begin(), xs.end());
        ws.insert(ws.end(), vs.begin(), vs.end());
      }
      lo = hi;
      edge *= 2.0;
    }
  } else {
    adaptive_radial_rule(0.0, seg.r_max, phase, rs, ws);
  }
  cplx d = ray_direction(seg.label);
  cplx factor = ray_orientation(seg.label) * d;
  SegmentNodes out;
  out.k.reserve(rs.size());
  out.w.reserve(rs.size());
  out.r = rs;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out.k.push_back(d * rs[i]);
    out.w.push_back(factor * ws[i]);
  }
  return out;
}

}  // namespace bhse
