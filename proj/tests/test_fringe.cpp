#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qeraser/fringe.hpp"

using namespace qeraser;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("cosine fit recovers coefficients") {
  const auto phi = periodic_phi_grid(40);
  std::vector<double> y;
  for (double p : phi) y.push_back(2.0 + 0.7 * std::cos(p) - 0.4 * std::sin(p));
  const CosineFit fit = fit_cosine(phi, y);
  CHECK(fit.offset == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.cos_coef == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.sin_coef == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(fit.visibility() == doctest::Approx(std::hypot(0.7, 0.4) / 2.0).epsilon(1e-12));
}

TEST_CASE("visibility of ideal and flat fringes") {
  const auto phi = phi_grid(0.0, 2 * kPi, 256);
  std::vector<double> full;
  std::vector<double> flat;
  for (double p : phi) {
    full.push_back(0.5 * (1 - std::cos(p)));
    flat.push_back(0.3);
  }
  CHECK(estimate_visibility(phi, full) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(estimate_visibility(phi, flat) < 1e-12);
  CHECK(estimate_visibility(phi, std::vector<double>(256, 0.0)) == 0.0);
}

TEST_CASE("fit needs a full period") {
  const auto short_span = phi_grid(0.0, 1.0, 16);
  const std::vector<double> y(16, 1.0);
  CHECK_THROWS_AS(fit_cosine(short_span, y), std::invalid_argument);
  CHECK(scan_visibility(short_span, y) == 0.0);
  const auto few = periodic_phi_grid(4);
  CHECK_THROWS_AS(fit_cosine(few, std::vector<double>(4, 1.0)), std::invalid_argument);
}

TEST_CASE("normalized fringes") {
  const std::vector<double> y{1.0, 3.0, 2.0};
  const auto n = normalize_fringe(y);
  CHECK(n[0] == doctest::Approx(-1.0));
  CHECK(n[1] == doctest::Approx(1.0));
  CHECK(n[2] == doctest::Approx(0.0));
  const auto z = normalize_fringe(std::vector<double>(5, 4.0));
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("phase grids") {
  const auto g = phi_grid(0.0, 0.0, 2);
  CHECK(g.size() == 2);
  CHECK(g[0] == g[1]);
  const auto h = phi_grid(0.0, 2 * kPi, 256);
  CHECK(h.front() == 0.0);
  CHECK(h.back() == 2 * kPi);
  CHECK_THROWS_AS(phi_grid(0.0, 1.0, 1), std::invalid_argument);
  const auto p = periodic_phi_grid(8);
  CHECK(p[4] == doctest::Approx(kPi));
}

TEST_CASE("noisy fringe fit is unbiased") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.01);
  const auto phi = periodic_phi_grid(200);
  std::vector<double> y;
  for (double p : phi) y.push_back(1.0 + 0.6 * std::cos(p + 0.3) + noise(rng));
  CHECK(estimate_visibility(phi, y) == doctest::Approx(0.6).epsilon(0.01));
}

TEST_CASE("oracle scan") {
  ScenarioParams p;
  p.zeta = Angle::from_degrees(45);
  p.eta = Angle::from_degrees(45);
  p.xi = Angle::from_degrees(45);
  p.theta = Angle::from_degrees(45);
  const auto phi = periodic_phi_grid(64);
  const FringeScan s = oracle_scan(p, phi);
  CHECK(s.visibility_1 == doctest::Approx(1.0));
  CHECK(s.visibility_2 == doctest::Approx(1.0));
  CHECK(s.scenario.has_value());
  const FringeScan half = oracle_scan(p, phi, 0.5);
  CHECK(half.visibility_1 == doctest::Approx(0.5));
}
