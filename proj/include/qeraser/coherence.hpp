#pragma once

// Finite-linewidth source model. Both lineshapes are normalized so that the
// fringe visibility factor equals 1/e at a path difference of one coherence
// length:
//   Lorentzian: L_c = c / (pi dnu),              gamma = exp(-dL / L_c)
//   Gaussian:   L_c = sqrt(2 ln2 / pi) c / dnu,  gamma = exp(-(dL / L_c)^2)

#include <string_view>

#include "qeraser/jones.hpp"

namespace qeraser {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

enum class Lineshape { Lorentzian, Gaussian };

enum class SourcePolarization { H, V, D, A };

struct SourceSpec {
  double wavelength = 632.8e-9;  // m
  double linewidth = 1.0e6;      // Hz
  Lineshape lineshape = Lineshape::Lorentzian;
  SourcePolarization polarization = SourcePolarization::V;
  double intensity = 1.0;  // units of I_0

  JonesVector jones() const;
};

struct CoherenceModel {
  double coherence_length = 0.0;  // m
  double path_difference = 0.0;   // m
  Lineshape lineshape = Lineshape::Lorentzian;
};

/// Throws std::invalid_argument for a non-positive or non-finite linewidth.
double coherence_length(const SourceSpec& source);

/// Throws std::invalid_argument for a negative path difference or a
/// non-positive coherence length.
double visibility_factor(const CoherenceModel& model);

/// i_dc + factor * i_cross.
double attenuate_fringe(double i_dc, double i_cross, double factor);

std::string_view to_string(Lineshape l);
std::string_view to_string(SourcePolarization p);

}  // namespace qeraser
