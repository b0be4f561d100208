#pragma once

#include <Eigen/Dense>
#include <optional>

#include "phaselab/matrix.hpp"
#include "phaselab/types.hpp"

namespace phaselab {

/// Unit-modulus complex number: the relative phase between two members of a
/// ray. Constructors absorb modulus drift below kDriftTol and reject more.
class RayPhase {
 public:
  explicit RayPhase(Complex c);
  static RayPhase from_angle(double radians);

  Complex value() const { return c_; }
  double arg() const { return principal_arg(c_); }

  static constexpr double kDriftTol = 1e-9;

 private:
  struct unit_tag {};
  RayPhase(Complex c, unit_tag) : c_(c) {}
  Complex c_;
};

/// Normalized complex amplitude vector; one representative of a ray.
///
/// The checked constructor accepts vectors whose norm deviates from 1 by less
/// than kDriftTol and renormalizes them; larger deviations are rejected so
/// caller bugs are not silently absorbed. Use normalized() to build a state
/// from arbitrary nonzero amplitudes.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector normalized(Eigen::VectorXcd amplitudes);
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(v_.size()); }
  const Eigen::VectorXcd& vec() const { return v_; }
  Complex amplitude(int i) const { return v_(i); }

  /// Same ray member rotated by a unit phase.
  StateVector with_phase(const RayPhase& phase) const;

  static constexpr double kNormTol = 1e-12;
  static constexpr double kDriftTol = 1e-9;

 private:
  struct normalized_tag {};
  StateVector(Eigen::VectorXcd v, normalized_tag) : v_(std::move(v)) {}
  Eigen::VectorXcd v_;
};

/// Hilbert-space inner product, conjugate-linear in the first argument.
Complex inner(const StateVector& u, const StateVector& v);

/// Qubit state at Bloch angles (theta, phi):
/// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
StateVector bloch_state(double theta, double phi);

/// Unit phase c with ||v - c*u|| < tol when u and v lie in the same ray,
/// empty otherwise. The candidate phase is inner(u, v) rescaled to unit
/// modulus; ray equality is decided by the residual norm, which stays stable
/// for near-zero amplitudes.
std::optional<RayPhase> same_ray(const StateVector& u, const StateVector& v,
                                 double tol = 1e-9);

/// Rank-1 projector |psi><psi|.
SquareMatrix projector(const StateVector& psi);

/// Ray operator R(c) = I + (c - 1)|psi><psi|: rotates psi by the unit phase c
/// and fixes the orthogonal complement. Unitary for |c| = 1.
SquareMatrix ray_operator(const StateVector& psi, const RayPhase& c);

}  // namespace phaselab
