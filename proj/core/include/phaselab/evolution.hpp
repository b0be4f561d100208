#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "phaselab/state.hpp"

namespace phaselab {

/// Hermitian generator of unitary time evolution, hbar = 1.
///
/// Three kinds: Zero (free histories), Static, and Sampled (piecewise-linear
/// interpolation between strictly increasing sample times, clamped at the
/// ends). Every matrix must be Hermitian within kHermitianTol.
class HamiltonianSpec {
 public:
  enum class Kind { Zero, Static, Sampled };

  static constexpr double kHermitianTol = 1e-10;

  static HamiltonianSpec zero(int dim);
  static HamiltonianSpec static_field(SquareMatrix h);
  static HamiltonianSpec sampled(
      std::vector<std::pair<double, SquareMatrix>> samples);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Generator evaluated at time t.
  Eigen::MatrixXcd at(double t) const;

  const SquareMatrix& static_matrix() const;
  const std::vector<std::pair<double, SquareMatrix>>& samples() const {
    return samples_;
  }

 private:
  HamiltonianSpec(Kind kind, int dim) : kind_(kind), dim_(dim) {}
  Kind kind_;
  int dim_;
  std::vector<std::pair<double, SquareMatrix>> samples_;
};

/// Strictly increasing time grid t_0 < t_1 < ... < t_n, n >= 1.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);
  static TimeGrid uniform(double t0, double t1, int steps);

  int steps() const { return static_cast<int>(times_.size()) - 1; }
  int size() const { return static_cast<int>(times_.size()); }
  double time(int k) const { return times_[k]; }
  double dt(int k) const { return times_[k + 1] - times_[k]; }
  double front() const { return times_.front(); }
  double back() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }

 private:
  std::vector<double> times_;
};

/// Discrete curve in state space: one normalized state per grid time.
///
/// Consecutive overlaps must stay above kOverlapFloor; below that the grid is
/// too coarse to attach meaning to per-step phases, and construction throws
/// OverlapCollapse. The generator is present only when the states actually
/// solve the Schroedinger equation for it; phase-adjusted trajectories
/// (parallel transport) drop it.
class Trajectory {
 public:
  static constexpr double kOverlapFloor = 0.5;

  Trajectory(TimeGrid grid, std::vector<StateVector> states,
             std::optional<HamiltonianSpec> generator = std::nullopt);

  const TimeGrid& grid() const { return grid_; }
  const std::vector<StateVector>& states() const { return states_; }
  const StateVector& state(int k) const { return states_[k]; }
  const std::optional<HamiltonianSpec>& generator() const { return generator_; }

  int dim() const { return states_.front().dim(); }
  /// Number of steps (states() has segments() + 1 entries).
  int segments() const { return static_cast<int>(states_.size()) - 1; }

  /// Sub-trajectory over grid indices [first, last], inclusive.
  Trajectory slice(int first, int last) const;

 private:
  TimeGrid grid_;
  std::vector<StateVector> states_;
  std::optional<HamiltonianSpec> generator_;
};

/// Unitary midpoint step exp(-i H((t0+t1)/2) (t1-t0)), built from the
/// Hermitian eigendecomposition so it is unitary to rounding.
SquareMatrix step_propagator(const HamiltonianSpec& h, double t_from,
                             double t_to);

/// Propagator from t_from to t_to composed of midpoint steps no longer than
/// max_dt. Exact (single eigendecomposition) for Zero and Static kinds.
SquareMatrix propagator(const HamiltonianSpec& h, double t_from, double t_to,
                        double max_dt = 1e-3);

/// Integrate psi0 over the grid: psi_{k+1} = exp(-i H(t_mid) dt_k) psi_k,
/// renormalizing each state. Throws OverlapCollapse when a step rotates the
/// state so far that |<psi_k|psi_{k+1}>| <= 0.5.
Trajectory evolve(const HamiltonianSpec& h, const StateVector& psi0,
                  const TimeGrid& grid);

/// Same projective curve as evolve(), with per-state phases adjusted so every
/// consecutive overlap is real-positive (discrete parallel transport). The
/// result carries no generator.
Trajectory evolve_parallel(const HamiltonianSpec& h, const StateVector& psi0,
                           const TimeGrid& grid);

/// Total phase Arg<psi(0)|psi(T)> iff the trajectory closes in ray space
/// (|<psi(0)|psi(T)>| > 1 - tol), empty otherwise.
std::optional<double> is_cyclic(const Trajectory& traj, double tol = 1e-6);

}  // namespace phaselab
