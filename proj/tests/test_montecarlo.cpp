#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "qeraser/montecarlo.hpp"
#include "qeraser/netlist.hpp"

using namespace qeraser;
using namespace qeraser::literals;

namespace {

ScenarioParams eraser() {
  ScenarioParams p;
  p.zeta = 45_deg;
  p.eta = 45_deg;
  p.xi = 45_deg;
  p.theta = 45_deg;
  return p;
}

Circuit parse(const std::string& text) {
  auto r = parse_netlist(text);
  REQUIRE(std::holds_alternative<Circuit>(r));
  return std::get<Circuit>(r);
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(bin_seed(42, 3) == 0xFA4F945599F9054AULL);
}

TEST_CASE("histograms are reproducible per seed") {
  const auto a = sample_clicks(eraser(), 16, 500, 9);
  const auto b = sample_clicks(eraser(), 16, 500, 9);
  const auto c = sample_clicks(eraser(), 16, 500, 10);
  bool differs = false;
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(a.bins[k].clicks_1 == b.bins[k].clicks_1);
    CHECK(a.bins[k].clicks_2 == b.bins[k].clicks_2);
    differs = differs || a.bins[k].clicks_1 != c.bins[k].clicks_1;
  }
  CHECK(differs);
}

TEST_CASE("bins are independent streams") {
  // bin 0 sits at phi = 0 for any bin count
  const auto a = sample_clicks(eraser(), 8, 300, 5);
  const auto b = sample_clicks(eraser(), 16, 300, 5);
  CHECK(a.bins[0].clicks_1 == b.bins[0].clicks_1);
  CHECK(a.bins[0].clicks_2 == b.bins[0].clicks_2);

  // a model change in one bin does not disturb the others
  const auto base = sample_clicks([](double) { return DetectorProbabilities{0.3, 0.6}; }, 8, 400, 5);
  const auto bumped = sample_clicks(
      [](double phi) { return DetectorProbabilities{phi == 0.0 ? 0.9 : 0.3, 0.6}; }, 8, 400, 5);
  for (std::size_t k = 1; k < 8; ++k) CHECK(base.bins[k].clicks_1 == bumped.bins[k].clicks_1);
}

TEST_CASE("invalid counts are rejected") {
  CHECK_THROWS_AS(sample_clicks(eraser(), 1, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_clicks(eraser(), 8, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_visibility(sample_clicks(eraser(), 8, 10, 0), 3), std::invalid_argument);
}

TEST_CASE("click statistics are binomial across seeds") {
  ScenarioParams p = eraser();
  p.xi = 30_deg;
  double sum_z2 = 0.0;
  int n = 0;
  int outliers = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto h = sample_clicks(p, 16, 10000, seed);
    for (const auto& b : h.bins) {
      for (auto [clicks, expected] : {std::pair{b.clicks_1, b.expected_1}, std::pair{b.clicks_2, b.expected_2}}) {
        const double prob = expected / 10000.0;
        const double var = 10000.0 * prob * (1 - prob);
        if (var < 1.0) continue;
        const double z = (static_cast<double>(clicks) - expected) / std::sqrt(var);
        sum_z2 += z * z;
        outliers += std::abs(z) > 4.0 ? 1 : 0;
        ++n;
      }
    }
  }
  REQUIRE(n > 2000);
  CHECK(sum_z2 / n == doctest::Approx(1.0).epsilon(0.12));
  CHECK(outliers <= 2);
}

TEST_CASE("histogram visibility") {
  const auto h = sample_clicks(eraser(), 32, 100000, 1);
  CHECK(estimate_visibility(h, 1) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(estimate_visibility(h, 2) == doctest::Approx(1.0).epsilon(0.01));
  ScenarioParams flat = eraser();
  flat.pol_a = false;
  flat.pol_b = false;
  const auto f = sample_clicks(flat, 32, 100000, 1);
  CHECK(estimate_visibility(f, 1) < 0.01);
}

TEST_CASE("engine sampling follows the circuit") {
  const Circuit c = parse(
      "source pol=V\nprep diag\nsplit pbs\nhwp path=1 rot=45deg\nhwp path=2 rot=45deg\n"
      "phase path=1 phi=PHI\nmerge pbs\npol port=A angle=45deg\npol port=B angle=45deg\n");
  const auto h = sample_clicks(c, 8, 1000, 42);
  CHECK(h.bins[0].clicks_1 == 0);
  CHECK(h.bins[0].expected_1 == doctest::Approx(0.0));
  CHECK(h.bins[4].expected_1 == doctest::Approx(500.0));
}

TEST_CASE("screen rendering") {
  ImageParams params;
  params.width = 64;
  params.height = 48;
  params.tilt_period = 16;
  params.beam_waist = 20;
  const ScreenImage img = render_screen(eraser(), Port::A, params);
  CHECK(img.width == 64);
  CHECK(img.height == 48);
  CHECK(img.samples.size() == 64u * 48u);
  CHECK(img.at(0, 24) == doctest::Approx(0.0));  // dark fringe at phi = 0
  CHECK(column_contrast(img, params) > 0.99);

  ScenarioParams flat = eraser();
  flat.pol_a = false;
  const ScreenImage f = render_screen(flat, Port::A, params);
  CHECK(column_contrast(f, params) < 1e-9);

  CHECK(beam_envelope(params, 0, 0) < beam_envelope(params, 32, 24));

  params.width = 4;
  CHECK_THROWS_AS(render_screen(eraser(), Port::A, params), std::invalid_argument);
  params.width = 64;
  params.tilt_period = 0;
  CHECK_THROWS_AS(render_screen(eraser(), Port::A, params), std::invalid_argument);
}

TEST_CASE("side-by-side composition and PGM encoding") {
  ImageParams params;
  params.width = 16;
  params.height = 8;
  params.tilt_period = 8;
  params.beam_waist = 6;
  const ScreenImage left = render_screen(eraser(), Port::B, params);
  const ScreenImage right = render_screen(eraser(), Port::A, params);
  const ScreenImage both = compose_side_by_side(left, right);
  CHECK(both.width == 32);
  CHECK(both.at(3, 2) == left.at(3, 2));
  CHECK(both.at(16 + 5, 2) == right.at(5, 2));

  const std::string pgm = encode_pgm(both);
  const std::string header = "P5\n32 8\n255\n";
  REQUIRE(pgm.size() == header.size() + 32 * 8);
  CHECK(pgm.substr(0, header.size()) == header);
  unsigned char peak = 0;
  for (std::size_t k = header.size(); k < pgm.size(); ++k) {
    peak = std::max(peak, static_cast<unsigned char>(pgm[k]));
  }
  CHECK(peak == 255);
}
