#include "phaselab/state.hpp"

#include <cmath>

#include "phaselab/errors.hpp"

namespace phaselab {

namespace {

void require_finite(const Eigen::VectorXcd& v, const char* who) {
  if (!v.allFinite()) {
    throw InvalidArgument(std::string(who) + ": non-finite amplitude");
  }
}

}  // namespace

RayPhase::RayPhase(Complex c) {
  if (!is_finite(c)) throw InvalidArgument("RayPhase: non-finite value");
  double mod = std::abs(c);
  if (std::abs(mod - 1.0) >= kDriftTol) {
    throw InvalidArgument("RayPhase: modulus " + std::to_string(mod) +
                          " deviates from 1 beyond drift tolerance");
  }
  c_ = c / mod;
}

RayPhase RayPhase::from_angle(double radians) {
  return RayPhase(unit_phase(radians), unit_tag{});
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() < 1) throw InvalidArgument("StateVector: dim must be >= 1");
  require_finite(v_, "StateVector");
  double norm = v_.norm();
  if (std::abs(norm - 1.0) >= kDriftTol) {
    throw InvalidArgument(
        "StateVector: norm " + std::to_string(norm) +
        " deviates from 1 beyond drift tolerance; use StateVector::normalized "
        "for unnormalized amplitudes");
  }
  v_ /= norm;
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  if (amplitudes.size() < 1) throw InvalidArgument("StateVector: dim must be >= 1");
  require_finite(amplitudes, "StateVector::normalized");
  double norm = amplitudes.norm();
  if (norm < 1e-300) {
    throw InvalidArgument("StateVector::normalized: zero vector");
  }
  return StateVector(amplitudes / norm, normalized_tag{});
}

StateVector StateVector::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw InvalidArgument("StateVector::basis: index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v), normalized_tag{});
}

StateVector StateVector::with_phase(const RayPhase& phase) const {
  return StateVector(v_ * phase.value(), normalized_tag{});
}

Complex inner(const StateVector& u, const StateVector& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("inner: dimension mismatch (" +
                            std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()) + ")");
  }
  // Eigen's dot conjugates the left operand: u.dot(v) = <u|v>.
  return u.vec().dot(v.vec());
}

StateVector bloch_state(double theta, double phi) {
  Eigen::VectorXcd v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::sin(theta / 2.0) * unit_phase(phi);
  return StateVector::normalized(std::move(v));
}

std::optional<RayPhase> same_ray(const StateVector& u, const StateVector& v,
                                 double tol) {
  Complex g = inner(u, v);
  double mod = std::abs(g);
  if (mod < 1e-12) return std::nullopt;
  Complex c = g / mod;
  double residual = (v.vec() - c * u.vec()).norm();
  if (residual >= tol) return std::nullopt;
  return RayPhase(c);
}

SquareMatrix projector(const StateVector& psi) {
  return SquareMatrix(psi.vec() * psi.vec().adjoint());
}

SquareMatrix ray_operator(const StateVector& psi, const RayPhase& c) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(psi.dim(), psi.dim());
  r += (c.value() - 1.0) * (psi.vec() * psi.vec().adjoint());
  return SquareMatrix(std::move(r));
}

}  // namespace phaselab
