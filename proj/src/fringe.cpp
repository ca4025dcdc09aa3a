#include "qeraser/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qeraser {

double CosineFit::amplitude() const { return std::hypot(cos_coef, sin_coef); }

double CosineFit::visibility() const {
  if (!(offset > 0.0)) return 0.0;
  return std::clamp(amplitude() / offset, 0.0, 1.0);
}

CosineFit fit_cosine(std::span<const double> phi, std::span<const double> y) {
  const std::size_t n = phi.size();
  if (n != y.size()) throw std::invalid_argument("fit_cosine: phi and y differ in length");
  if (n < 8) throw std::invalid_argument("fit_cosine: need at least 8 samples");
  const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
  const double needed = 2.0 * std::numbers::pi * static_cast<double>(n - 1) / static_cast<double>(n);
  if (*hi - *lo < needed - 1e-9) {
    throw std::invalid_argument("fit_cosine: samples must span at least one period");
  }

  Eigen::MatrixX3d design(n, 3);
  Eigen::VectorXd rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    design(row, 0) = 1.0;
    design(row, 1) = std::cos(phi[k]);
    design(row, 2) = std::sin(phi[k]);
    rhs(row) = y[k];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
  return CosineFit{coef(0), coef(1), coef(2)};
}

double estimate_visibility(std::span<const double> phi, std::span<const double> y) {
  if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
    if (phi.size() != y.size()) throw std::invalid_argument("estimate_visibility: length mismatch");
    return 0.0;
  }
  return fit_cosine(phi, y).visibility();
}

double scan_visibility(std::span<const double> phi, std::span<const double> y) {
  try {
    return estimate_visibility(phi, y);
  } catch (const std::invalid_argument&) {
    return 0.0;
  }
}

std::vector<double> normalize_fringe(std::span<const double> y) {
  std::vector<double> out(y.begin(), y.end());
  if (out.empty()) return out;
  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(out.size());
  double amp = 0.0;
  for (double& v : out) {
    v -= mean;
    amp = std::max(amp, std::abs(v));
  }
  if (amp == 0.0) return out;
  for (double& v : out) v /= amp;
  return out;
}

std::vector<double> phi_grid(double from, double to, std::size_t steps) {
  if (steps < 2) throw std::invalid_argument("phi_grid: steps must be at least 2");
  std::vector<double> out(steps);
  const double step = (to - from) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) out[k] = from + step * static_cast<double>(k);
  out.back() = to;
  return out;
}

std::vector<double> periodic_phi_grid(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  }
  return out;
}

FringeScan oracle_scan(const ScenarioParams& p, std::span<const double> phi,
                       double coherence_factor) {
  FringeScan scan;
  scan.phi_values.assign(phi.begin(), phi.end());
  scan.polarized_1 = p.pol_a;
  scan.polarized_2 = p.pol_b;
  scan.scenario = p;
  ScenarioParams point = p;
  for (double ph : phi) {
    point.phi = Angle::from_radians(ph);
    scan.i1.push_back(port_intensity(point, Port::A, coherence_factor));
    scan.i2.push_back(port_intensity(point, Port::B, coherence_factor));
  }
  scan.visibility_1 = scan_visibility(scan.phi_values, scan.i1);
  scan.visibility_2 = scan_visibility(scan.phi_values, scan.i2);
  return scan;
}

}  // namespace qeraser
