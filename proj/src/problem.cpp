#include "bhse/problem.hpp"

#include <cmath>
#include <cstdio>

#include "bhse/types.hpp"

namespace bhse {
namespace {

constexpr double int_eps = 1e-9;

bool near_integer(double v) { return std::abs(v - std::round(v)) < int_eps; }

bool odd_integer(double v) {
  return near_integer(v) && std::llround(v) % 2 != 0;
}

bool even_integer(double v) {
  return near_integer(v) && std::llround(v) % 2 == 0;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string nonlinearity_clause(double s, double p) {
  if (even_integer(p)) return {};  // |q|^p q is a polynomial in q, conj(q)
  if (near_integer(s)) {
    if (odd_integer(p) && !(p >= s - int_eps))
      return "integer s requires p >= s for odd-integer p (s=" + fmt(s) +
             ", p=" + fmt(p) + ")";
    if (!near_integer(p) && !(std::floor(p) >= s - 1.0 - int_eps))
      return "integer s requires floor(p) >= s-1 for non-integer p (s=" +
             fmt(s) + ", p=" + fmt(p) + ")";
  } else {
    if (odd_integer(p) && !(p > s))
      return "non-integer s requires p > s for odd-integer p (s=" + fmt(s) +
             ", p=" + fmt(p) + ")";
    if (!near_integer(p) && !(std::floor(p) >= std::floor(s) - int_eps))
      return "non-integer s requires floor(p) >= floor(s) (s=" + fmt(s) +
             ", p=" + fmt(p) + ")";
  }
  return {};
}

std::string s_clause_nonlinear(double s) {
  if (!(s > 0.5) || !(s < 4.5))
    return "s must lie in (1/2, 9/2), got s=" + fmt(s);
  if (std::abs(s - 1.5) < int_eps) return "s = 3/2 is excluded";
  return {};
}

std::string s_clause_linear(double s) {
  if (!(s >= 0.0) || !(s < 4.5))
    return "s must lie in [0, 9/2), got s=" + fmt(s);
  if (std::abs(s - 0.5) < int_eps) return "s = 1/2 is excluded";
  if (std::abs(s - 1.5) < int_eps) return "s = 3/2 is excluded";
  return {};
}

std::vector<HypothesisCheck> validate_problem(const IBVPData& data,
                                              bool nonlinear) {
  std::vector<HypothesisCheck> out;
  auto add = [&](const std::string& name, const std::string& clause) {
    out.push_back({name, clause.empty(), clause});
  };

  add("s range", nonlinear ? s_clause_nonlinear(data.s)
                           : s_clause_linear(data.s));
  if (nonlinear) add("nonlinearity power", nonlinearity_clause(data.s, data.p));
  add("p positive", data.p > 0.0 ? "" : "p must be positive, got p=" +
                                            fmt(data.p));
  add("horizon", data.T > 0.0 ? "" : "T must be positive, got T=" +
                                         fmt(data.T));

  const bool have_data =
      data.q0.size() >= 4 && data.g0.size() >= 2 && data.g1.size() >= 2;
  std::string cover;
  if (have_data) {
    const double slack = 1e-9 * std::max(data.g0.dt, data.g1.dt);
    if (data.g0.t_end() < data.T - slack || data.g1.t_end() < data.T - slack)
      cover = "boundary signals end before T";
  } else {
    cover = "q0 and the boundary signals must be non-empty";
  }
  add("data coverage", cover);

  // corner conditions only bind for s > 1/2
  std::string compat;
  const bool needs_corner = nonlinear || data.s > 0.5;
  if (have_data && out[0].pass && needs_corner) {
    try {
      check_compatibility(data.q0, data.g0, data.g1, data.s);
    } catch (const Error& e) {
      compat = e.what();
    }
  }
  add("corner compatibility", compat);
  return out;
}

void require_valid(const IBVPData& data, bool nonlinear) {
  for (const auto& c : validate_problem(data, nonlinear)) {
    if (c.pass) continue;
    if (c.name == "corner compatibility") throw CompatibilityError(c.detail);
    throw ConfigError(c.detail);
  }
}

}  // namespace bhse
