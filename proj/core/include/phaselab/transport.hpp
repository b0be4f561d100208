#pragma once

#include <span>
#include <vector>

#include "phaselab/phases.hpp"

namespace phaselab {

/// Parallel-transported trajectories keep per-step phase residuals below this.
inline constexpr double kTransportTol = 1e-10;

/// Per-step parallel-transport diagnostics. per_step[k] is the magnitude of
/// Arg<psi_k|psi_{k+1}>, the discrete residual of the <psi|dpsi/dt> = 0
/// condition.
struct TransportReport {
  std::vector<double> per_step;
  double max_defect;
  bool is_transported;
};

TransportReport transport_defect(const Trajectory& traj,
                                 double transport_tol = kTransportTol);

/// Multiply each state by a unit phase so every consecutive overlap becomes
/// real-positive. The projective curve is unchanged; the result carries no
/// generator. Throws OrthogonalStates when a consecutive pair has overlap
/// magnitude at or below orth_tol.
Trajectory parallel_transport(const Trajectory& traj, double orth_tol = kOrthTol);

/// Worst per-step phase residual of the superposition sum_n c_n |psi_n(t)>
/// built from individually parallel-transported, everywhere-orthonormal basis
/// trajectories. Zero (to rounding) exactly when the cross-overlaps
/// <psi_m|d psi_n/dt> vanish; generically nonzero, which is why no machine
/// can parallel-transport arbitrary superpositions.
///
/// Orthonormality and per-basis transport are validated, not repaired;
/// violations throw InvalidArgument.
double universal_transport_residual(std::span<const Trajectory> bases,
                                    std::span<const Complex> coeffs,
                                    double ortho_tol = 1e-8,
                                    double transport_tol = kTransportTol);

}  // namespace phaselab
