#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "bhse/contour.hpp"
#include "doctest.h"

using namespace bhse;

namespace {

cplx sum_over(const SegmentNodes& n, const std::function<cplx(cplx)>& f) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n.k.size(); ++i) acc += n.w[i] * f(n.k[i]);
  return acc;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  REQUIRE(x.size() == 5);
  // 5-point rule is exact through degree 9.
  for (int deg = 0; deg <= 9; ++deg) {
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += w[i] * std::pow(x[i], deg);
    double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
  double wsum = 0.0;
  for (double v : w) wsum += v;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  // nodes ascend and are symmetric
  for (int i = 1; i < 5; ++i) CHECK(x[i] > x[i - 1]);
  CHECK(x[2] == doctest::Approx(0.0));
  CHECK(x[0] == doctest::Approx(-x[4]).epsilon(1e-14));
}

TEST_CASE("gauss_legendre cache returns identical rules") {
  std::vector<double> x1, w1, x2, w2;
  gauss_legendre(31, x1, w1);
  gauss_legendre(31, x2, w2);
  CHECK(x1 == x2);
  CHECK(w1 == w2);
}

TEST_CASE("adaptive radial rule: smooth decaying integrand") {
  std::vector<double> r, w;
  adaptive_radial_rule(0.0, 5.0, nullptr, r, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * std::exp(-r[i]);
  CHECK(acc == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-12));
}

TEST_CASE("adaptive radial rule resolves fast oscillation") {
  const double omega = 40.0;
  auto phase = [omega](double a, double b) { return omega * (b - a); };
  std::vector<double> r, w;
  adaptive_radial_rule(0.0, 8.0, phase, r, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * std::cos(omega * r[i]);
  CHECK(acc == doctest::Approx(std::sin(320.0) / omega).epsilon(1e-10));
}

TEST_CASE("tanh-sinh handles an endpoint singularity") {
  std::vector<double> r, w;
  panel_rule(QuadRule::tanh_sinh, 0.0, 1.0, 0, r, w);
  double acc = 0.0, acc_log = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    acc += w[i] / std::sqrt(r[i]);
    acc_log += w[i] * std::log(1.0 / r[i]);
  }
  CHECK(acc == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(acc_log == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ray directions, orientations, quartic phase is purely imaginary") {
  for (Ray ray : {Ray::gamma1, Ray::gamma2, Ray::gamma3, Ray::gamma4}) {
    cplx d = ray_direction(ray);
    CHECK(std::abs(std::abs(d) - 1.0) < 1e-15);
    ContourSegment seg{ray, 6.0, QuadRule::gauss_legendre_panels};
    auto nodes = segment_nodes(seg, nullptr);
    REQUIRE(nodes.k.size() > 0);
    for (std::size_t i = 0; i < nodes.k.size(); ++i) {
      cplx k4 = std::pow(nodes.k[i], 4);
      // -i k^4 stays on the imaginary axis along every ray
      CHECK(std::abs(std::real(-iu * k4)) <= 1e-12 * std::abs(k4) + 1e-300);
      CHECK(nodes.r[i] == doctest::Approx(std::abs(nodes.k[i])).epsilon(1e-14));
    }
  }
  CHECK(ray_orientation(Ray::gamma1) == 1.0);
  CHECK(ray_orientation(Ray::gamma2) == -1.0);
  CHECK(ray_orientation(Ray::gamma3) == 1.0);
  CHECK(ray_orientation(Ray::gamma4) == -1.0);
}

TEST_CASE("oriented segment integrals of exp(ik) match antiderivatives") {
  // int e^{ik} dk = e^{ik}/i evaluated along the oriented path; the field
  // decays on gamma1/gamma2/gamma3, so r_max = 40 truncation is negligible.
  auto f = [](cplx k) { return std::exp(iu * k); };
  auto phase = [](double a, double b) { return b - a; };

  ContourSegment g1{Ray::gamma1, 40.0, QuadRule::gauss_legendre_panels};
  cplx v1 = sum_over(segment_nodes(g1, phase), f);
  CHECK(std::abs(v1 - iu) < 1e-12);  // (0 - 1)/i = i

  ContourSegment g2{Ray::gamma2, 40.0, QuadRule::gauss_legendre_panels};
  cplx v2 = sum_over(segment_nodes(g2, phase), f);
  CHECK(std::abs(v2 - (-iu)) < 1e-12);  // (1 - 0)/i = -i

  ContourSegment g3{Ray::gamma3, 40.0, QuadRule::gauss_legendre_panels};
  cplx v3 = sum_over(segment_nodes(g3, phase), f);
  CHECK(std::abs(v3 - iu) < 1e-12);

  // tanh-sinh alternative agrees
  ContourSegment g2ts{Ray::gamma2, 40.0, QuadRule::tanh_sinh};
  cplx v2ts = sum_over(segment_nodes(g2ts, nullptr), f);
  CHECK(std::abs(v2ts - v2) < 1e-9);
}

TEST_CASE("sector boundary integrals reproduce residues") {
  // f(k) = 1/(k^4 + i) has one simple pole inside each upper sector:
  // p1 = e^{i 3pi/8} in the right sector, p2 = e^{i 7pi/8} in the left.
  auto f = [](cplx k) { return 1.0 / (std::pow(k, 4) + iu); };
  auto phase = [](double, double) { return 50.0; };  // poles sit near |k| = 1
  const double r_max = 1000.0;  // r^{ -4} tail beyond this is ~3e-10

  auto loop = [&](Ray a, Ray b) {
    ContourSegment sa{a, r_max, QuadRule::gauss_legendre_panels};
    ContourSegment sb{b, r_max, QuadRule::gauss_legendre_panels};
    return sum_over(segment_nodes(sa, phase), f) +
           sum_over(segment_nodes(sb, phase), f);
  };

  cplx p1 = std::polar(1.0, 3.0 * pi / 8.0);
  cplx want1 = 2.0 * pi * iu / (4.0 * p1 * p1 * p1);
  cplx got1 = loop(Ray::gamma1, Ray::gamma2);
  CHECK(std::abs(got1 - want1) < 2e-9 * std::abs(want1) + 1e-9);

  cplx p2 = std::polar(1.0, 7.0 * pi / 8.0);
  cplx want2 = 2.0 * pi * iu / (4.0 * p2 * p2 * p2);
  cplx got2 = loop(Ray::gamma3, Ray::gamma4);
  CHECK(std::abs(got2 - want2) < 2e-9 * std::abs(want2) + 1e-9);

  // analytic-inside variant vanishes around the right sector
  auto g = [](cplx k) { return std::exp(iu * k) / (k + 2.0 * iu); };
  auto phase_g = [](double a, double b) { return b - a; };
  ContourSegment sa{Ray::gamma1, 40.0, QuadRule::gauss_legendre_panels};
  ContourSegment sb{Ray::gamma2, 40.0, QuadRule::gauss_legendre_panels};
  cplx got0 = sum_over(segment_nodes(sa, phase_g), g) +
              sum_over(segment_nodes(sb, phase_g), g);
  CHECK(std::abs(got0) < 1e-10);
}

TEST_CASE("fourth roots land on their rays and recover tau") {
  struct Case {
    Ray ray;
    double tau;
    double want_arg;
  };
  const Case cases[] = {
      {Ray::gamma1, -3.7, pi / 4.0},
      {Ray::gamma2, 5.2, pi / 2.0},
      {Ray::gamma3, -0.01, 3.0 * pi / 4.0},
      {Ray::gamma4, 16.0, pi},
  };
  for (const auto& c : cases) {
    cplx k = fourth_root_on_ray(c.tau, c.ray);
    CHECK(std::abs(std::arg(k) - c.want_arg) < 1e-14);
    cplx k4 = std::pow(k, 4);
    CHECK(std::abs(k4 - c.tau) < 1e-13 * std::abs(c.tau));
  }
  CHECK(std::abs(fourth_root_on_ray(16.0, Ray::gamma4) - cplx(-2.0, 0.0)) <
        1e-14);
  CHECK_THROWS_AS(fourth_root_on_ray(1.0, Ray::gamma1), DomainError);
  CHECK_THROWS_AS(fourth_root_on_ray(-1.0, Ray::gamma2), DomainError);

  BranchRule neg{BranchMode::neg_real_fourth_root};
  CHECK(std::abs(neg.fourth_root(81.0) - cplx(-3.0, 0.0)) < 1e-13);
  BranchRule argpi{BranchMode::arg_pi_fourth_root};
  CHECK(std::abs(argpi.fourth_root(-81.0) - 3.0 * ray_direction(Ray::gamma1)) <
        1e-13);
}

TEST_CASE("theta cutoff partitions the radius") {
  const double s2 = std::sqrt(2.0);
  CHECK(theta_cutoff(0.0) == 1.0);
  CHECK(theta_cutoff(s2) == 1.0);
  CHECK(theta_cutoff(2.0 * s2) == 0.0);
  CHECK(theta_cutoff(5.0) == 0.0);
  double mid = theta_cutoff(2.0);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(theta_cutoff(1.6) > theta_cutoff(2.4));
}
