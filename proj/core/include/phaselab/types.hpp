#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace phaselab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Principal argument in (-pi, pi]. std::arg can return -pi for inputs on the
/// negative real axis (negative-zero imaginary part); fold that onto +pi so
/// the branch convention is uniform everywhere in the toolkit.
inline double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

/// Reduce an angle to the principal branch (-pi, pi].
inline double principal_angle(double radians) {
  double r = std::remainder(radians, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

/// Distance of an angle from 0 mod 2*pi, in [0, pi].
inline double angle_residual(double radians) {
  return std::abs(principal_angle(radians));
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex unit_phase(double radians) {
  return Complex(std::cos(radians), std::sin(radians));
}

}  // namespace phaselab
