#include "qeraser/jones.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {

constexpr double kBasisTol = 1e-12;

bool is_unit(const Complex& c) { return std::abs(c - Complex{1.0, 0.0}) <= kBasisTol; }
bool is_zero(const Complex& c) { return std::abs(c) <= kBasisTol; }

}  // namespace

JonesVector horizontal() { return JonesVector{Complex{1.0}, Complex{0.0}}; }
JonesVector vertical() { return JonesVector{Complex{0.0}, Complex{1.0}}; }

JonesVector linear(Angle a) {
  return JonesVector{Complex{std::cos(a.radians)}, Complex{std::sin(a.radians)}};
}

JonesMatrix hwp_matrix(Angle axis) {
  const double c = std::cos(2.0 * axis.radians);
  const double s = std::sin(2.0 * axis.radians);
  JonesMatrix m;
  m << c, s, s, -c;
  return m;
}

JonesMatrix rotation_matrix(Angle a) {
  const double c = std::cos(a.radians);
  const double s = std::sin(a.radians);
  JonesMatrix m;
  m << c, -s, s, c;
  return m;
}

JonesMatrix qwp_matrix(Angle axis) {
  JonesMatrix retarder;
  retarder << 1.0, 0.0, 0.0, kI;
  return rotation_matrix(axis) * retarder * rotation_matrix(-axis);
}

JonesMatrix polarizer_matrix(Angle theta) {
  const double c = std::cos(theta.radians);
  const double s = std::sin(theta.radians);
  JonesMatrix m;
  m << c * c, s * c, s * c, s * s;
  return m;
}

JonesMatrix phase_matrix(Angle phi) {
  return std::polar(1.0, phi.radians) * JonesMatrix::Identity();
}

JonesMatrix compose(const JonesMatrix& a, const JonesMatrix& b) { return a * b; }

JonesVector apply(const JonesMatrix& m, const JonesVector& v) { return m * v; }

double intensity(const JonesVector& v) { return std::norm(v(0)) + std::norm(v(1)); }

Complex project(const JonesVector& v, Angle theta) {
  return v(0) * std::cos(theta.radians) + v(1) * std::sin(theta.radians);
}

SymmetricPair symmetric_decompose(const JonesVector& basis, Angle theta, Angle delta) {
  if (!(delta.radians >= 0.0 && delta.radians < std::numbers::pi / 2)) {
    throw std::invalid_argument("symmetric_decompose: delta must lie in [0, pi/2)");
  }
  Angle plus_angle;
  Angle minus_angle;
  if (is_unit(basis(0)) && is_zero(basis(1))) {
    plus_angle = delta;
    minus_angle = -delta;
  } else if (is_zero(basis(0)) && is_unit(basis(1))) {
    const Angle vertical_axis = Angle::from_radians(std::numbers::pi / 2);
    plus_angle = vertical_axis - delta;
    minus_angle = vertical_axis + delta;
  } else {
    throw std::invalid_argument("symmetric_decompose: basis must be the unit H or V vector");
  }

  SymmetricPair pair;
  pair.plus = linear(plus_angle);
  pair.minus = linear(minus_angle);
  pair.plus_on_axis = std::cos(plus_angle.radians - theta.radians);
  pair.minus_on_axis = std::cos(minus_angle.radians - theta.radians);
  return pair;
}

PolarizerDecomposition polarizer_decomposition(Angle theta) {
  if (!(theta.radians > 0.0 && theta.radians < std::numbers::pi / 2)) {
    throw std::invalid_argument("polarizer_decomposition: theta must lie in (0, pi/2)");
  }
  const Angle right = Angle::from_radians(std::numbers::pi / 2);
  return PolarizerDecomposition{
      symmetric_decompose(horizontal(), theta, theta),
      symmetric_decompose(vertical(), theta, right - theta),
  };
}

}  // namespace qeraser
