#include "qeraser/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "qeraser/fringe.hpp"

namespace qeraser {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t bernoulli_count(std::mt19937_64& rng, std::uint64_t trials, double p) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) hits += unit_uniform(rng) < p ? 1U : 0U;
  return hits;
}

void check_image_params(const ImageParams& params) {
  if (params.width < 8 || params.height < 8) {
    throw std::invalid_argument("render_screen: width and height must be at least 8");
  }
  if (!(params.tilt_period > 0.0) || !(params.beam_waist > 0.0)) {
    throw std::invalid_argument("render_screen: tilt period and waist must be positive");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t bin_seed(std::uint64_t seed, std::uint64_t bin) {
  return splitmix64(splitmix64(seed) ^ bin);
}

ClickHistogram sample_clicks(const IntensityModel& model, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed) {
  if (bins < 2) throw std::invalid_argument("sample_clicks: need at least 2 bins");
  if (photons_per_bin < 1) throw std::invalid_argument("sample_clicks: need at least 1 photon per bin");

  ClickHistogram h;
  h.photons_per_bin = photons_per_bin;
  h.seed = seed;
  h.bins.resize(bins);
  const auto phis = periodic_phi_grid(bins);
  const auto n = static_cast<double>(photons_per_bin);
  for (std::size_t k = 0; k < bins; ++k) {
    const auto probs = model(phis[k]);
    const double p1 = std::clamp(probs.p1, 0.0, 1.0);
    const double p2 = std::clamp(probs.p2, 0.0, 1.0);
    std::mt19937_64 rng(bin_seed(seed, k));
    ClickBin& b = h.bins[k];
    b.phi = phis[k];
    b.clicks_1 = bernoulli_count(rng, photons_per_bin, p1);
    b.clicks_2 = bernoulli_count(rng, photons_per_bin, p2);
    b.expected_1 = p1 * n;
    b.expected_2 = p2 * n;
  }
  return h;
}

ClickHistogram sample_clicks(const ScenarioParams& scenario, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed) {
  return sample_clicks(
      [&scenario](double phi) {
        ScenarioParams p = scenario;
        p.phi = Angle::from_radians(phi);
        return DetectorProbabilities{port_intensity(p, Port::A), port_intensity(p, Port::B)};
      },
      bins, photons_per_bin, seed);
}

ClickHistogram sample_clicks(const Circuit& circuit, std::size_t bins,
                             std::uint64_t photons_per_bin, std::uint64_t seed,
                             const EngineOptions& options) {
  return sample_clicks(
      [&](double phi) {
        const auto i = port_intensities(circuit, phi, options);
        return DetectorProbabilities{i.a, i.b};
      },
      bins, photons_per_bin, seed);
}

double estimate_visibility(const ClickHistogram& histogram, int channel) {
  if (channel != 1 && channel != 2) {
    throw std::invalid_argument("estimate_visibility: channel must be 1 or 2");
  }
  const std::size_t n = histogram.bins.size();
  std::vector<double> phi(n);
  std::vector<double> counts(n);
  for (std::size_t k = 0; k < n; ++k) {
    phi[k] = histogram.bins[k].phi;
    counts[k] = static_cast<double>(channel == 1 ? histogram.bins[k].clicks_1
                                                 : histogram.bins[k].clicks_2);
  }
  if (std::all_of(counts.begin(), counts.end(), [](double c) { return c == 0.0; })) return 0.0;

  const CosineFit fit = fit_cosine(phi, counts);

  // Covariance of the fitted coefficients under independent binomial noise:
  // (A^T A)^-1 A^T diag(var) A (A^T A)^-1.
  Eigen::MatrixX3d design(n, 3);
  Eigen::VectorXd var(n);
  const auto trials = static_cast<double>(histogram.photons_per_bin);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    design(row, 0) = 1.0;
    design(row, 1) = std::cos(phi[k]);
    design(row, 2) = std::sin(phi[k]);
    const double p = counts[k] / trials;
    var(row) = trials * p * (1.0 - p);
  }
  const Eigen::Matrix3d normal_inv = (design.transpose() * design).inverse();
  const Eigen::Matrix3d cov =
      normal_inv * design.transpose() * var.asDiagonal() * design * normal_inv;
  const double sigma_amp = std::sqrt(std::max(cov(1, 1), cov(2, 2)));
  if (fit.amplitude() <= 3.0 * sigma_amp) return 0.0;
  return fit.visibility();
}

double beam_envelope(const ImageParams& params, int x, int y) {
  const double cx = 0.5 * (params.width - 1);
  const double cy = 0.5 * (params.height - 1);
  const double dx = x - cx;
  const double dy = y - cy;
  return std::exp(-(dx * dx + dy * dy) / (params.beam_waist * params.beam_waist));
}

ScreenImage render_screen(const std::function<double(double phi)>& fringe,
                          const ImageParams& params) {
  check_image_params(params);
  ScreenImage img;
  img.width = params.width;
  img.height = params.height;
  img.tilt_period = params.tilt_period;
  img.beam_waist = params.beam_waist;
  img.samples.resize(static_cast<std::size_t>(params.width) * static_cast<std::size_t>(params.height));

  std::vector<double> column(static_cast<std::size_t>(params.width));
  for (int x = 0; x < params.width; ++x) {
    const double phi = params.phi0 + 2.0 * std::numbers::pi * x / params.tilt_period;
    column[static_cast<std::size_t>(x)] = std::max(0.0, fringe(phi));
  }
  for (int y = 0; y < params.height; ++y) {
    for (int x = 0; x < params.width; ++x) {
      img.samples[static_cast<std::size_t>(y) * static_cast<std::size_t>(params.width) +
                  static_cast<std::size_t>(x)] =
          column[static_cast<std::size_t>(x)] * beam_envelope(params, x, y);
    }
  }
  return img;
}

ScreenImage render_screen(const ScenarioParams& scenario, Port port, const ImageParams& params) {
  return render_screen(
      [&](double phi) {
        ScenarioParams p = scenario;
        p.phi = Angle::from_radians(phi);
        return port_intensity(p, port);
      },
      params);
}

ScreenImage render_screen(const Circuit& circuit, Port port, const ImageParams& params,
                          const EngineOptions& options) {
  return render_screen(
      [&](double phi) {
        const auto i = port_intensities(circuit, phi, options);
        return port == Port::A ? i.a : i.b;
      },
      params);
}

ScreenImage compose_side_by_side(const ScreenImage& left, const ScreenImage& right) {
  if (left.height != right.height) {
    throw std::invalid_argument("compose_side_by_side: heights differ");
  }
  ScreenImage out;
  out.width = left.width + right.width;
  out.height = left.height;
  out.tilt_period = left.tilt_period;
  out.beam_waist = left.beam_waist;
  out.samples.reserve(static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < left.width; ++x) out.samples.push_back(left.at(x, y));
    for (int x = 0; x < right.width; ++x) out.samples.push_back(right.at(x, y));
  }
  return out;
}

ScreenImage render_screens(const Circuit& circuit, const ImageParams& params,
                           const EngineOptions& options) {
  return compose_side_by_side(render_screen(circuit, Port::B, params, options),
                              render_screen(circuit, Port::A, params, options));
}

std::vector<double> envelope_corrected_columns(const ScreenImage& image, const ImageParams& params) {
  std::vector<double> out(static_cast<std::size_t>(image.width));
  for (int x = 0; x < image.width; ++x) {
    double num = 0.0;
    double den = 0.0;
    for (int y = 0; y < image.height; ++y) {
      const double e = beam_envelope(params, x, y);
      num += image.at(x, y) * e;
      den += e * e;
    }
    out[static_cast<std::size_t>(x)] = den > 0.0 ? num / den : 0.0;
  }
  return out;
}

double column_contrast(const ScreenImage& image, const ImageParams& params) {
  const auto cols = envelope_corrected_columns(image, params);
  const auto [lo, hi] = std::minmax_element(cols.begin(), cols.end());
  if (!(*hi + *lo > 0.0)) return 0.0;
  return (*hi - *lo) / (*hi + *lo);
}

std::string encode_pgm(const ScreenImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  const double peak =
      image.samples.empty() ? 0.0 : *std::max_element(image.samples.begin(), image.samples.end());
  out.reserve(out.size() + image.samples.size());
  for (double s : image.samples) {
    const double v = peak > 0.0 ? std::clamp(s / peak, 0.0, 1.0) : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
  }
  return out;
}

}  // namespace qeraser
