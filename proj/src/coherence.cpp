#include "qeraser/coherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qeraser {

JonesVector SourceSpec::jones() const {
  const double amp = std::sqrt(intensity);
  switch (polarization) {
    case SourcePolarization::H:
      return amp * horizontal();
    case SourcePolarization::V:
      return amp * vertical();
    case SourcePolarization::D:
      return amp * linear(Angle::from_degrees(45.0));
    case SourcePolarization::A:
      return amp * linear(Angle::from_degrees(-45.0));
  }
  return amp * vertical();
}

double coherence_length(const SourceSpec& source) {
  if (!(source.linewidth > 0.0) || !std::isfinite(source.linewidth)) {
    throw std::invalid_argument("coherence_length: linewidth must be positive");
  }
  switch (source.lineshape) {
    case Lineshape::Lorentzian:
      return kSpeedOfLight / (std::numbers::pi * source.linewidth);
    case Lineshape::Gaussian:
      return std::sqrt(2.0 * std::numbers::ln2 / std::numbers::pi) * kSpeedOfLight /
             source.linewidth;
  }
  return 0.0;
}

double visibility_factor(const CoherenceModel& model) {
  if (!(model.path_difference >= 0.0)) {
    throw std::invalid_argument("visibility_factor: path difference must be non-negative");
  }
  if (!(model.coherence_length > 0.0)) {
    throw std::invalid_argument("visibility_factor: coherence length must be positive");
  }
  const double r = model.path_difference / model.coherence_length;
  switch (model.lineshape) {
    case Lineshape::Lorentzian:
      return std::exp(-r);
    case Lineshape::Gaussian:
      return std::exp(-r * r);
  }
  return 0.0;
}

double attenuate_fringe(double i_dc, double i_cross, double factor) {
  return i_dc + factor * i_cross;
}

std::string_view to_string(Lineshape l) {
  return l == Lineshape::Lorentzian ? "lorentzian" : "gaussian";
}

std::string_view to_string(SourcePolarization p) {
  switch (p) {
    case SourcePolarization::H:
      return "H";
    case SourcePolarization::V:
      return "V";
    case SourcePolarization::D:
      return "D";
    case SourcePolarization::A:
      return "A";
  }
  return "V";
}

}  // namespace qeraser
