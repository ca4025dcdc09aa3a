#include "qeraser/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {

double sq(double x) { return x * x; }

}  // namespace

ClosedFormAmplitudes amplitudes(const ScenarioParams& p) {
  ClosedFormAmplitudes a;
  if (p.hwp_path1) {
    const double c = std::cos(p.zeta.radians);
    const double s = std::sin(p.zeta.radians);
    a.vx = c * s;
    a.vy = c * c;
  }
  if (p.hwp_path2) {
    const double c = std::cos(p.eta.radians);
    const double s = std::sin(p.eta.radians);
    a.hx = c * c;
    a.hy = s * c;
  }
  return a;
}

JonesVector field_a(const ScenarioParams& p) {
  const auto a = amplitudes(p);
  const Complex phase = std::polar(1.0, p.phi.radians);
  const double k = 1.0 / std::sqrt(2.0);
  return JonesVector{k * Complex{a.hx}, -k * phase * a.vy};
}

JonesVector field_b(const ScenarioParams& p) {
  const auto a = amplitudes(p);
  const Complex phase = std::polar(1.0, p.phi.radians);
  const Complex k = kI / std::sqrt(2.0);
  return JonesVector{k * a.hy, k * phase * a.vx};
}

FringeTerms intensity_1_terms(const ScenarioParams& p) {
  if (!p.pol_a) throw std::invalid_argument("intensity_1: no polarizer on port A");
  const double ce = std::cos(p.eta.radians);
  const double cz = std::cos(p.zeta.radians);
  const double cx = std::cos(p.xi.radians);
  const double sx = std::sin(p.xi.radians);
  const double cos_phi = std::cos(p.phi.radians);
  return FringeTerms{
      0.5 * (sq(sq(ce)) * sq(cx) + sq(sq(cz)) * sq(sx)),
      -0.5 * sq(ce) * sq(cz) * std::sin(2.0 * p.xi.radians) * cos_phi,
  };
}

FringeTerms intensity_2_terms(const ScenarioParams& p) {
  if (!p.pol_b) throw std::invalid_argument("intensity_2: no polarizer on port B");
  const double ce = std::cos(p.eta.radians);
  const double se = std::sin(p.eta.radians);
  const double cz = std::cos(p.zeta.radians);
  const double sz = std::sin(p.zeta.radians);
  const double ct = std::cos(p.theta.radians);
  const double st = std::sin(p.theta.radians);
  const double cos_phi = std::cos(p.phi.radians);
  return FringeTerms{
      0.5 * (sq(se) * sq(ce) * sq(st) + sq(sz) * sq(cz) * sq(ct)),
      -0.5 * se * ce * sz * cz * std::sin(2.0 * p.theta.radians) * cos_phi,
  };
}

double intensity_1(const ScenarioParams& p) { return intensity_1_terms(p).total(); }
double intensity_2(const ScenarioParams& p) { return intensity_2_terms(p).total(); }

double intensity_1_special(Angle xi, Angle phi) {
  return 0.125 * (1.0 - std::sin(2.0 * xi.radians) * std::cos(phi.radians));
}

// Same sign as the general law for port B; see README "Conventions".
double intensity_2_special(Angle theta, Angle phi) {
  return 0.125 * (1.0 - std::sin(2.0 * theta.radians) * std::cos(phi.radians));
}

double intensity_1_diag(Angle eta, Angle zeta, Angle phi) {
  const double ce = std::cos(eta.radians);
  const double cz = std::cos(zeta.radians);
  return 0.5 * (0.5 * (sq(sq(ce)) + sq(sq(cz))) - sq(ce) * sq(cz) * std::cos(phi.radians));
}

double intensity_2_diag(Angle eta, Angle zeta, Angle phi) {
  const double ce = std::cos(eta.radians);
  const double se = std::sin(eta.radians);
  const double cz = std::cos(zeta.radians);
  const double sz = std::sin(zeta.radians);
  return 0.5 * (0.5 * (sq(se) * sq(ce) + sq(sz) * sq(cz)) -
                se * ce * sz * cz * std::cos(phi.radians));
}

double port_intensity(const ScenarioParams& p, Port port) {
  return port_intensity(p, port, 1.0);
}

double port_intensity(const ScenarioParams& p, Port port, double coherence_factor) {
  if (port == Port::A) {
    if (!p.pol_a) return intensity(field_a(p));
    const auto t = intensity_1_terms(p);
    return attenuate_fringe(t.dc, t.cross, coherence_factor);
  }
  if (!p.pol_b) return intensity(field_b(p));
  const auto t = intensity_2_terms(p);
  return attenuate_fringe(t.dc, t.cross, coherence_factor);
}

}  // namespace qeraser
