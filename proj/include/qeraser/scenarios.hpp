#pragma once

// Named presets for the panels of the reference experiment matrix, and the
// engine-plus-oracle checks that back the `scenario` and `verify` commands.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qeraser/circuit.hpp"
#include "qeraser/dualrail.hpp"
#include "qeraser/oracle.hpp"

namespace qeraser {

enum class Expectation { Flat, Fringe, Zero, FringeSwapped };

std::string_view to_string(Expectation e);

struct PortExpectation {
  Port port = Port::A;
  Expectation kind = Expectation::Flat;
  /// For Fringe: the fringe must equal this preset's fringe on the same
  /// port. For FringeSwapped: it must be the inverse of it. Empty if none.
  std::string_view reference;
};

struct ScenarioPreset {
  std::string_view name;
  std::string_view description;
  ScenarioParams params;
  std::vector<PortExpectation> expectations;
};

std::span<const ScenarioPreset> scenario_presets();
/// nullptr if unknown.
const ScenarioPreset* find_preset(std::string_view name);

/// Netlist text realizing a scenario (phase swept with PHI on path 1).
std::string scenario_netlist(const ScenarioParams& params, std::string_view comment = {});
/// Parsed circuit of `scenario_netlist`. Throws std::logic_error if the
/// generated text does not parse.
Circuit scenario_circuit(const ScenarioParams& params);

struct CheckResult {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// One `PASS|FAIL label detail` line per check.
  std::string text() const;
};

/// Phase grid used by scenario checks: 256 points over [0, 2 pi].
std::vector<double> scenario_phi_grid();

Report run_scenario(const ScenarioPreset& preset, const EngineOptions& options = {});

struct VerifyOptions {
  EngineOptions engine;
  std::uint64_t seed = 20220528;
};

/// Oracle exactness, engine/oracle fringe equivalence, distinguishability
/// lock, swap laws and energy conservation.
Report run_verification(const VerifyOptions& options = {});

/// Max |a - b| between normalized fringes.
double normalized_deviation(std::span<const double> a, std::span<const double> b);

}  // namespace qeraser
