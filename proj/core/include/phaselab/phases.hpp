#pragma once

#include <span>
#include <utility>

#include "phaselab/evolution.hpp"

namespace phaselab {

/// States with |<a|b>| at or below this are treated as orthogonal: their
/// relative phase is undefined.
inline constexpr double kOrthTol = 1e-8;

/// Tolerance for the total = dynamical + geometric identity (mod 2*pi).
inline constexpr double kDecompositionTol = 1e-6;

/// Total/dynamical/geometric split of the phase accumulated over a trajectory
/// segment. total and geometric are principal values in (-pi, pi]; dynamical
/// is the unwrapped accumulated value. total - dynamical - geometric vanishes
/// mod 2*pi up to discretization error.
struct PhaseDecomposition {
  double total;
  double dynamical;
  double geometric;
  std::pair<double, double> segment;

  double residual_mod_2pi() const {
    return angle_residual(total - dynamical - geometric);
  }
};

/// Cyclic product of pairwise overlaps <psi_0|psi_1>...<psi_{m-1}|psi_0>.
/// A zero value (orthogonal link in the chain) leaves the argument undefined.
struct BargmannInvariant {
  Complex value;
  int order;
  double argument;
  bool defined;
};

enum class DynamicalRoute {
  Auto,       ///< Generator when present, Overlap otherwise.
  Generator,  ///< -integral of <psi|H|psi> dt by trapezoid (needs generator).
  Overlap,    ///< sum of Arg<psi_k|psi_{k+1}> (kinematic route).
};

/// Relative (Pancharatnam) phase Arg<a|b> in (-pi, pi].
/// Throws OrthogonalStates when |<a|b>| <= orth_tol.
double pancharatnam_phase(const StateVector& a, const StateVector& b,
                          double orth_tol = kOrthTol);

/// Accumulated dynamical phase over the trajectory (unwrapped, not reduced).
/// The two routes agree to O(dt^2) for generator-produced trajectories.
double dynamical_phase(const Trajectory& traj,
                       DynamicalRoute route = DynamicalRoute::Auto);

/// Geometric phase of an open curve:
/// Arg<psi_0|psi_n> - sum_k Arg<psi_k|psi_{k+1}>, reduced to (-pi, pi].
/// Exactly invariant under per-state phase changes.
double geometric_phase_open(const Trajectory& traj, double orth_tol = kOrthTol);

/// Geometric phase of a closed projective curve; requires is_cyclic.
double geometric_phase_cyclic(const Trajectory& traj, double cyclic_tol = 1e-6,
                              double orth_tol = kOrthTol);

/// Full decomposition over the trajectory's span. The dynamical part follows
/// DynamicalRoute::Auto.
PhaseDecomposition decompose(const Trajectory& traj, double orth_tol = kOrthTol);

/// m-point Bargmann invariant, loop closed by <psi_{m-1}|psi_0>. m >= 3.
BargmannInvariant bargmann_invariant(std::span<const StateVector> states);

/// Two routes to the same excess phase across a split trajectory.
struct ExcessPhase {
  double lhs;  ///< geo(first segment) + geo(second segment) - geo(whole).
  double rhs;  ///< Arg of the three-point Bargmann invariant.
  BargmannInvariant invariant;
};

/// Excess geometric phase of splitting at interior grid index mid_index,
/// against the three-point Bargmann invariant of the sampled endpoints.
/// The two sides agree exactly (mod 2*pi) for the discrete formulas.
ExcessPhase excess_geometric_phase(const Trajectory& traj, int mid_index,
                                   double orth_tol = kOrthTol);

}  // namespace phaselab
