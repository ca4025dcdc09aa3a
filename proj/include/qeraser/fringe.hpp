#pragma once

// Fringe scans and their contrast.

#include <optional>
#include <span>
#include <vector>

#include "qeraser/oracle.hpp"

namespace qeraser {

/// Sampled I(phi) for both detectors. Channel 1 is port A, channel 2 port B;
/// `polarized_k` records whether that port carries a polarizer.
struct FringeScan {
  std::vector<double> phi_values;
  std::vector<double> i1;
  std::vector<double> i2;
  double visibility_1 = 0.0;
  double visibility_2 = 0.0;
  bool polarized_1 = false;
  bool polarized_2 = false;
  std::optional<ScenarioParams> scenario;
};

/// Least-squares fit of y = offset + c cos(phi) + s sin(phi).
struct CosineFit {
  double offset = 0.0;
  double cos_coef = 0.0;
  double sin_coef = 0.0;

  double amplitude() const;
  /// (Imax - Imin)/(Imax + Imin) of the fitted curve, clamped to [0, 1];
  /// zero when the offset is not positive.
  double visibility() const;
};

/// Requires at least 8 samples spanning at least one period (a periodic
/// grid of n points spanning 2 pi (n-1)/n is accepted). Throws
/// std::invalid_argument otherwise.
CosineFit fit_cosine(std::span<const double> phi, std::span<const double> y);

double estimate_visibility(std::span<const double> phi, std::span<const double> y);

/// estimate_visibility, or 0 when the samples cannot support a fit.
double scan_visibility(std::span<const double> phi, std::span<const double> y);

/// (y - mean) / max|y - mean|. A flat input maps to all zeros.
std::vector<double> normalize_fringe(std::span<const double> y);

/// Inclusive linspace; `steps` >= 2.
std::vector<double> phi_grid(double from, double to, std::size_t steps);

/// n points k * 2 pi / n.
std::vector<double> periodic_phi_grid(std::size_t n);

/// Oracle scan of a scenario over the given phases.
FringeScan oracle_scan(const ScenarioParams& p, std::span<const double> phi,
                       double coherence_factor = 1.0);

}  // namespace qeraser
