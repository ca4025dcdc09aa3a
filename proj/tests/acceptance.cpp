// Acceptance suite: one PASS/FAIL line per criterion AC-1 .. AC-10.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pinned_points.hpp"
#include "qeraser/coherence.hpp"
#include "qeraser/dualrail.hpp"
#include "qeraser/fringe.hpp"
#include "qeraser/jones.hpp"
#include "qeraser/montecarlo.hpp"
#include "qeraser/netlist.hpp"
#include "qeraser/oracle.hpp"
#include "qeraser/scenarios.hpp"
#include "random_circuits.hpp"

namespace fs = std::filesystem;
using namespace qeraser;
using namespace qeraser::literals;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<Circuit> parse(std::string_view text) {
  auto r = parse_netlist(text);
  if (auto* c = std::get_if<Circuit>(&r)) return std::move(*c);
  return std::nullopt;
}

// Shared by AC-3..AC-5, which are sections of the verification report.
const Report& verification() {
  static const Report r = run_verification();
  return r;
}

Outcome from_verification(std::initializer_list<std::string_view> prefixes) {
  Outcome o{true, ""};
  for (const auto& c : verification().checks) {
    for (auto p : prefixes) {
      if (c.label.rfind(p, 0) != 0) continue;
      o.passed = o.passed && c.passed;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += c.label + ": " + c.detail;
    }
  }
  if (o.detail.empty()) return {false, "no matching checks"};
  return o;
}

Outcome ac1() {
  double pinned = 0.0;
  for (const auto& pt : kPinnedPoints) {
    ScenarioParams p;
    p.zeta = Angle::from_degrees(pt.zeta);
    p.eta = Angle::from_degrees(pt.eta);
    p.xi = Angle::from_degrees(pt.xi);
    p.theta = Angle::from_degrees(pt.theta);
    p.phi = Angle::from_degrees(pt.phi);
    pinned = std::max({pinned, std::abs(intensity_1(p) - pt.i1), std::abs(intensity_2(p) - pt.i2)});
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double spec = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Angle a = Angle::from_radians(u(rng));
    const Angle b = Angle::from_radians(u(rng));
    const Angle phi = Angle::from_radians(u(rng));
    const Angle q = k % 2 == 0 ? 45_deg : -(45_deg);
    ScenarioParams s;
    s.zeta = q;
    s.eta = q;
    s.xi = a;
    s.theta = b;
    s.phi = phi;
    spec = std::max({spec, std::abs(intensity_1_special(a, phi) - intensity_1(s)),
                     std::abs(intensity_2_special(b, phi) - intensity_2(s))});
    ScenarioParams d;
    d.zeta = a;
    d.eta = b;
    d.xi = 45_deg;
    d.theta = 45_deg;
    d.phi = phi;
    spec = std::max({spec, std::abs(intensity_1_diag(b, a, phi) - intensity_1(d)),
                     std::abs(intensity_2_diag(b, a, phi) - intensity_2(d))});
  }
  const std::size_t n = std::size(kPinnedPoints);
  return {n == 20 && pinned < 1e-12 && spec < 1e-12,
          std::to_string(n) + " pinned max err " + sci(pinned) + ", 1000 draws max err " + sci(spec)};
}

Outcome ac2() {
  const auto grid = scenario_phi_grid();
  double worst = 0.0;
  std::string detail;
  int count = 0;
  for (const auto& preset : scenario_presets()) {
    const auto& p = preset.params;
    if (!(p.hwp_path1 && p.hwp_path2) || !(p.pol_a || p.pol_b)) continue;
    const FringeScan e = sweep(scenario_circuit(p), grid);
    const FringeScan o = oracle_scan(p, grid);
    double dev = 0.0;
    if (p.pol_a) dev = std::max(dev, normalized_deviation(e.i1, o.i1));
    if (p.pol_b) dev = std::max(dev, normalized_deviation(e.i2, o.i2));
    worst = std::max(worst, dev);
    detail += std::string(preset.name) + "=" + sci(dev) + " ";
    ++count;
  }
  return {count > 0 && worst < 1e-9, std::to_string(count) + " eraser presets: " + detail};
}

Outcome ac6() {
  SourceSpec s;
  const double lc = coherence_length(s);
  const double g = visibility_factor({lc, lc, Lineshape::Lorentzian});
  const double gg = visibility_factor({lc, lc, Lineshape::Gaussian});
  auto c = parse(slurp(fs::path(QE_SOURCE_DIR) / "presets/figure1.onl"));
  if (!c) return {false, "figure1.onl does not parse"};
  c->elements.push_back({PathDiff{100.0 * lc}});
  const FringeScan scan = sweep(*c, periodic_phi_grid(256));
  const double v = std::max(scan.visibility_1, scan.visibility_2);
  const bool ok = std::abs(g - std::exp(-1.0)) < 1e-12 && std::abs(gg - std::exp(-1.0)) < 1e-12 &&
                  std::abs(lc - 95.426) < 0.001 && v < 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "L_c=%.6f m, gamma(L_c)-1/e=%s, V at 100 L_c=%s", lc,
                sci(g - std::exp(-1.0)).c_str(), sci(v).c_str());
  return {ok, buf};
}

Outcome ac7() {
  auto c = parse(slurp(fs::path(QE_SOURCE_DIR) / "presets/figure1.onl"));
  if (!c) return {false, "figure1.onl does not parse"};
  constexpr std::uint64_t photons = 1'000'000;
  const auto h = sample_clicks(*c, 64, photons, 42);
  double worst_z = 0.0;
  bool exact = true;
  std::vector<double> phi;
  std::vector<double> e1;
  std::vector<double> e2;
  for (const auto& b : h.bins) {
    for (auto [clicks, expected] : {std::pair{b.clicks_1, b.expected_1}, std::pair{b.clicks_2, b.expected_2}}) {
      const double p = expected / static_cast<double>(photons);
      const double sigma = std::sqrt(static_cast<double>(photons) * p * (1.0 - p));
      const double diff = std::abs(static_cast<double>(clicks) - expected);
      if (sigma < 1e-9) {
        exact = exact && diff < 0.5;
      } else {
        worst_z = std::max(worst_z, diff / sigma);
      }
    }
    phi.push_back(b.phi);
    e1.push_back(b.expected_1);
    e2.push_back(b.expected_2);
  }
  const double v1 = estimate_visibility(h, 1);
  const double v2 = estimate_visibility(h, 2);
  const double a1 = estimate_visibility(phi, e1);
  const double a2 = estimate_visibility(phi, e2);
  const double dv = std::max(std::abs(v1 - a1), std::abs(v2 - a2));
  char buf[160];
  std::snprintf(buf, sizeof buf, "64x1e6 seed 42: max |z|=%.2f, V=(%.4f, %.4f) analytic (%.4f, %.4f)", worst_z,
                v1, v2, a1, a2);
  return {exact && worst_z < 5.0 && dv < 0.01, buf};
}

Outcome ac8() {
  int presets = 0;
  int bad_presets = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(QE_SOURCE_DIR) / "presets")) {
    if (entry.path().extension() != ".onl") continue;
    ++presets;
    if (!parse(slurp(entry.path()))) ++bad_presets;
  }

  const fs::path dir = fs::path(QE_SOURCE_DIR) / "tests/fixtures/errors";
  std::ifstream manifest(dir / "expected.txt");
  std::string line;
  int fixtures = 0;
  int fixture_ok = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    std::string file;
    std::string code;
    int ln = 0;
    int col = 0;
    f >> file >> code >> ln >> col;
    ++fixtures;
    const auto r = parse_netlist(slurp(dir / file));
    const auto* errs = std::get_if<std::vector<ParseError>>(&r);
    if (errs != nullptr && errs->size() == 1 && to_string(errs->front().code) == code &&
        errs->front().line == ln && errs->front().column == col) {
      ++fixture_ok;
    }
  }

  std::mt19937_64 rng(2024);
  int round_trip_ok = 0;
  for (int k = 0; k < 1000; ++k) {
    const Circuit c = random_circuit(rng);
    const std::string text = format_netlist(c);
    const auto back = parse(text);
    if (back && structurally_equal(*back, c) && format_netlist(*back) == text) ++round_trip_ok;
  }
  return {presets > 0 && bad_presets == 0 && fixtures == 12 && fixture_ok == 12 && round_trip_ok == 1000,
          std::to_string(presets - bad_presets) + "/" + std::to_string(presets) + " presets, " +
              std::to_string(fixture_ok) + "/" + std::to_string(fixtures) + " fixtures, " +
              std::to_string(round_trip_ok) + "/1000 round trips"};
}

Outcome ac9() {
  const ImageParams params;
  int identical = 0;
  int contrast_ok = 0;
  int ports = 0;
  std::string detail;
  for (const auto& preset : scenario_presets()) {
    const Circuit c = scenario_circuit(preset.params);
    const std::string pgm = encode_pgm(render_screens(c, params));
    const fs::path golden = fs::path(QE_SOURCE_DIR) / "tests/golden" / (std::string(preset.name) + ".pgm");
    if (fs::exists(golden) && slurp(golden) == pgm) {
      ++identical;
    } else {
      detail += std::string(preset.name) + " differs from golden; ";
    }
    for (const auto& ex : preset.expectations) {
      ++ports;
      const double k = column_contrast(render_screen(c, ex.port, params), params);
      const bool fringe = ex.kind == Expectation::Fringe || ex.kind == Expectation::FringeSwapped;
      if (fringe ? k > 0.99 : k < 1e-9) {
        ++contrast_ok;
      } else {
        detail += std::string(preset.name) + " port " + port_letter(ex.port) + " contrast " + sci(k) + "; ";
      }
    }
  }
  const int n = static_cast<int>(scenario_presets().size());
  detail += std::to_string(identical) + "/" + std::to_string(n) + " byte-identical, " +
            std::to_string(contrast_ok) + "/" + std::to_string(ports) + " port contrasts";
  return {identical == n && contrast_ok == ports, detail};
}

Outcome ac10() {
  double worst = 0.0;
  int cases = 0;
  for (int t = -180; t <= 180; ++t) {
    const Angle theta = Angle::from_degrees(t);
    for (int d = 0; d < 90; ++d) {
      const Angle delta = Angle::from_degrees(d);
      const double c2 = 2.0 * std::cos(delta.radians);
      for (const JonesVector& basis : {horizontal(), vertical()}) {
        const SymmetricPair p = symmetric_decompose(basis, theta, delta);
        worst = std::max(worst, (p.plus + p.minus - c2 * basis).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(p.plus_on_axis + p.minus_on_axis - c2 * project(basis, theta).real()));
        ++cases;
      }
    }
    if (t > 0 && t < 90) {
      const auto pd = polarizer_decomposition(theta);
      worst = std::max(worst, std::abs(pd.h.minus_on_axis + pd.v.minus_on_axis));
      worst = std::max(worst, std::abs(pd.h.plus_on_axis - 1.0));
      worst = std::max(worst, std::abs(pd.v.plus_on_axis - 1.0));
    }
  }
  return {worst < 1e-12, std::to_string(cases) + " decompositions, max err " + sci(worst)};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Outcome()> run;
  double time_limit;  // s, 0 for none
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC-1", "oracle exactness", ac1, 1.0},
      {"AC-2", "engine/oracle fringe equivalence", ac2, 1.0},
      {"AC-3", "distinguishability lock",
       [] { return from_verification({"distinguishability lock", "no plates"}); }, 0.0},
      {"AC-4", "swap laws", [] { return from_verification({"swap laws"}); }, 0.0},
      {"AC-5", "energy conservation", [] { return from_verification({"energy conservation"}); }, 0.0},
      {"AC-6", "coherence", ac6, 0.0},
      {"AC-7", "Monte Carlo convergence", ac7, 30.0},
      {"AC-8", "parser", ac8, 0.0},
      {"AC-9", "golden images", ac9, 0.0},
      {"AC-10", "polarizer decomposition", ac10, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.passed = false;
      o.detail += " (over time limit)";
    }
    std::printf("%s %-6s %s: %s [%.3f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
