#include "phaselab/transport.hpp"

#include <cmath>
#include <string>

#include "phaselab/errors.hpp"

namespace phaselab {

TransportReport transport_defect(const Trajectory& traj, double transport_tol) {
  TransportReport report;
  report.per_step.reserve(traj.segments());
  double max_defect = 0.0;
  for (int k = 0; k < traj.segments(); ++k) {
    double defect = std::abs(principal_arg(inner(traj.state(k), traj.state(k + 1))));
    report.per_step.push_back(defect);
    max_defect = std::max(max_defect, defect);
  }
  report.max_defect = max_defect;
  report.is_transported = max_defect < transport_tol;
  return report;
}

Trajectory parallel_transport(const Trajectory& traj, double orth_tol) {
  std::vector<StateVector> out;
  out.reserve(traj.states().size());
  out.push_back(traj.state(0));
  for (int k = 1; k <= traj.segments(); ++k) {
    Complex g = inner(out.back(), traj.state(k));
    double mod = std::abs(g);
    if (mod <= orth_tol) {
      throw OrthogonalStates("parallel_transport: consecutive overlap at step " +
                             std::to_string(k - 1) + " is numerically zero");
    }
    // Rotate so the overlap with the transported predecessor is real-positive.
    out.push_back(traj.state(k).with_phase(RayPhase(std::conj(g) / mod)));
  }
  // Phase-adjusted states no longer solve the generator's equation of motion.
  return Trajectory(traj.grid(), std::move(out), std::nullopt);
}

double universal_transport_residual(std::span<const Trajectory> bases,
                                    std::span<const Complex> coeffs,
                                    double ortho_tol, double transport_tol) {
  if (bases.empty() || bases.size() != coeffs.size()) {
    throw InvalidArgument(
        "universal_transport_residual: need one coefficient per basis "
        "trajectory");
  }
  const Trajectory& first = bases[0];
  int dim = first.dim();
  int n = first.segments();
  double coeff_norm2 = 0.0;
  for (const Complex& c : coeffs) coeff_norm2 += std::norm(c);
  if (std::abs(coeff_norm2 - 1.0) > 1e-8) {
    throw InvalidArgument(
        "universal_transport_residual: coefficients must satisfy "
        "sum |c_n|^2 = 1, got " + std::to_string(coeff_norm2));
  }
  for (const Trajectory& b : bases) {
    if (b.dim() != dim || b.segments() != n) {
      throw DimensionMismatch(
          "universal_transport_residual: basis trajectories must share one "
          "grid and dimension");
    }
    for (int k = 0; k <= n; ++k) {
      if (b.grid().time(k) != first.grid().time(k)) {
        throw InvalidArgument(
            "universal_transport_residual: basis trajectories must share one "
            "time grid");
      }
    }
    if (!transport_defect(b, transport_tol).is_transported) {
      throw InvalidArgument(
          "universal_transport_residual: a basis trajectory is not "
          "parallel-transported");
    }
  }
  // Orthonormality at every grid time is validated, never repaired: silent
  // re-orthonormalization would mask caller errors in a no-go demonstration.
  for (int k = 0; k <= n; ++k) {
    for (std::size_t a = 0; a < bases.size(); ++a) {
      for (std::size_t b = a; b < bases.size(); ++b) {
        Complex g = inner(bases[a].state(k), bases[b].state(k));
        double expected = (a == b) ? 1.0 : 0.0;
        if (std::abs(g - expected) > ortho_tol) {
          throw InvalidArgument(
              "universal_transport_residual: basis states are not orthonormal "
              "at grid index " + std::to_string(k));
        }
      }
    }
  }

  auto superpose = [&](int k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (std::size_t m = 0; m < bases.size(); ++m) {
      v += coeffs[m] * bases[m].state(k).vec();
    }
    return v;
  };

  double residual = 0.0;
  Eigen::VectorXcd prev = superpose(0);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd next = superpose(k + 1);
    residual = std::max(residual, std::abs(principal_arg(prev.dot(next))));
    prev = std::move(next);
  }
  return residual;
}

}  // namespace phaselab
