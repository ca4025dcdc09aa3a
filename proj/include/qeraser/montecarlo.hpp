#pragma once

// Photon-by-photon detector statistics and synthetic screen images.
//
// Clicks: for every phase bin and detector, `photons_per_bin` Bernoulli
// trials with success probability equal to the detector intensity in units
// of I_0. Each bin owns an std::mt19937_64 stream seeded with
// splitmix64(seed, bin); detector 1 draws first, then detector 2. Uniform
// variates are (x >> 11) * 2^-53. The histogram is therefore reproducible
// bit for bit on any conforming platform.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qeraser/circuit.hpp"
#include "qeraser/dualrail.hpp"
#include "qeraser/oracle.hpp"

namespace qeraser {

inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-per-bin";

struct ClickBin {
  double phi = 0.0;
  std::uint64_t clicks_1 = 0;
  std::uint64_t clicks_2 = 0;
  double expected_1 = 0.0;
  double expected_2 = 0.0;
};

struct ClickHistogram {
  std::vector<ClickBin> bins;
  std::uint64_t photons_per_bin = 0;
  std::uint64_t seed = 0;
};

/// Detection probabilities of both detectors at phase phi.
struct DetectorProbabilities {
  double p1 = 0.0;
  double p2 = 0.0;
};
using IntensityModel = std::function<DetectorProbabilities(double phi)>;

/// Bins sit at phi_k = 2 pi k / bins. Throws std::invalid_argument when
/// bins < 2 or photons_per_bin < 1. Probabilities are clamped to [0, 1].
ClickHistogram sample_clicks(const IntensityModel& model, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed);

/// Samples the closed-form intensities of a scenario.
ClickHistogram sample_clicks(const ScenarioParams& scenario, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed);

/// Samples the engine intensities of a circuit with a PHI sweep symbol.
ClickHistogram sample_clicks(const Circuit& circuit, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed,
                             const EngineOptions& options = {});

/// Visibility of detector `channel` (1 or 2). Returns 0 when the fitted
/// cosine amplitude is below three binomial standard errors.
double estimate_visibility(const ClickHistogram& histogram, int channel);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t bin_seed(std::uint64_t seed, std::uint64_t bin);

struct ImageParams {
  int width = 512;
  int height = 512;
  double tilt_period = 64.0;  // px per 2 pi of phase
  double beam_waist = 180.0;  // px
  double phi0 = 0.0;
};

struct ScreenImage {
  int width = 0;
  int height = 0;
  std::vector<double> samples;  // row-major, top-left origin
  double tilt_period = 0.0;
  double beam_waist = 0.0;

  double at(int x, int y) const {
    return samples[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                   static_cast<std::size_t>(x)];
  }
};

/// Envelope exp(-((x-cx)^2 + (y-cy)^2) / w^2) at pixel (x, y).
double beam_envelope(const ImageParams& params, int x, int y);

/// Pixel (x, y) = I(phi0 + 2 pi x / tilt_period) * envelope(x, y).
/// Throws std::invalid_argument for width or height < 8 or a non-positive
/// tilt period or waist.
ScreenImage render_screen(const std::function<double(double phi)>& fringe,
                          const ImageParams& params);
ScreenImage render_screen(const ScenarioParams& scenario, Port port, const ImageParams& params);
ScreenImage render_screen(const Circuit& circuit, Port port, const ImageParams& params,
                          const EngineOptions& options = {});

/// `left` and `right` side by side. Heights must match.
ScreenImage compose_side_by_side(const ScreenImage& left, const ScreenImage& right);

/// Both screens of a circuit: screen S2 (port B) on the left, S1 (port A)
/// on the right.
ScreenImage render_screens(const Circuit& circuit, const ImageParams& params,
                           const EngineOptions& options = {});

/// Column averages with the envelope divided out (least squares per column).
std::vector<double> envelope_corrected_columns(const ScreenImage& image, const ImageParams& params);

/// (max - min) / (max + min) of the corrected column profile; 0 if dark.
double column_contrast(const ScreenImage& image, const ImageParams& params);

/// Binary P5 PGM, maxval 255, samples scaled so the brightest maps to 255.
std::string encode_pgm(const ScreenImage& image);

}  // namespace qeraser
