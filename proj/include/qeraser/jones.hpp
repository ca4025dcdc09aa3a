#pragma once

// Jones calculus on a single spatial path. Basis order is (H, V); angles are
// measured counterclockwise from the horizontal axis.

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qeraser {

using Complex = std::complex<double>;
using JonesVector = Eigen::Vector2cd;
using JonesMatrix = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

/// Plane angle. The stored value is radians and is never range-reduced.
struct Angle {
  double radians = 0.0;

  static constexpr Angle from_radians(double r) { return Angle{r}; }
  /// Divides before multiplying so that multiples of 22.5 deg map to exact
  /// binary fractions of pi.
  static constexpr Angle from_degrees(double d) {
    return Angle{d / 180.0 * std::numbers::pi};
  }
  constexpr double degrees() const { return radians / std::numbers::pi * 180.0; }

  constexpr Angle operator-() const { return Angle{-radians}; }
  constexpr Angle operator+(Angle o) const { return Angle{radians + o.radians}; }
  constexpr Angle operator-(Angle o) const { return Angle{radians - o.radians}; }
  constexpr Angle operator*(double k) const { return Angle{radians * k}; }
  constexpr bool operator==(const Angle&) const = default;
};

namespace literals {
constexpr Angle operator""_deg(long double d) { return Angle::from_degrees(static_cast<double>(d)); }
constexpr Angle operator""_deg(unsigned long long d) { return Angle::from_degrees(static_cast<double>(d)); }
constexpr Angle operator""_rad(long double r) { return Angle::from_radians(static_cast<double>(r)); }
}  // namespace literals

JonesVector horizontal();
JonesVector vertical();
/// Linear polarization at angle `a` from H.
JonesVector linear(Angle a);

/// Half-wave plate with fast axis at `axis`; rotates linear polarization by
/// 2*axis. Global phase dropped, so the matrix is real symmetric.
JonesMatrix hwp_matrix(Angle axis);
/// R(axis) diag(1, i) R(-axis).
JonesMatrix qwp_matrix(Angle axis);
/// Rank-1 projector onto the linear axis `theta`.
JonesMatrix polarizer_matrix(Angle theta);
/// e^{i phi} on both components.
JonesMatrix phase_matrix(Angle phi);
/// Active counterclockwise rotation of the field by `a`.
JonesMatrix rotation_matrix(Angle a);

/// `a` applied after `b`.
JonesMatrix compose(const JonesMatrix& a, const JonesMatrix& b);
JonesVector apply(const JonesMatrix& m, const JonesVector& v);

double intensity(const JonesVector& v);
/// Real amplitude of `v` along the linear axis `theta` (complex in general).
Complex project(const JonesVector& v, Angle theta);

/// Symmetric split of a basis state into two unit vectors rotated by +-delta
/// about it. For H the members sit at +delta and -delta; for V at
/// pi/2 - delta and pi/2 + delta, so in both cases `plus` is tilted into
/// the first quadrant. plus + minus == 2 cos(delta) * basis.
struct SymmetricPair {
  JonesVector plus;
  JonesVector minus;
  /// Projections of the members onto the measurement axis `theta`.
  double plus_on_axis = 0.0;
  double minus_on_axis = 0.0;
};

/// Throws std::invalid_argument unless `basis` is the unit H or V vector and
/// 0 <= delta < pi/2.
SymmetricPair symmetric_decompose(const JonesVector& basis, Angle theta, Angle delta);

/// The polarizer-matched pair of decompositions: H split with delta = theta
/// and V split with delta = pi/2 - theta, so both `plus` members lie on the
/// polarizer axis and the two `minus` members are antiparallel.
/// Requires 0 < theta < pi/2.
struct PolarizerDecomposition {
  SymmetricPair h;
  SymmetricPair v;
};
PolarizerDecomposition polarizer_decomposition(Angle theta);

}  // namespace qeraser
