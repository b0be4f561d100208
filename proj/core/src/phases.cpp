#include "phaselab/phases.hpp"

#include <cmath>
#include <string>

#include "phaselab/errors.hpp"

namespace phaselab {

namespace {

/// Sum of per-step overlap arguments: the discrete connection integral
/// -i int <psi|dpsi> accumulated along the trajectory, with a flipped sign.
double accumulated_overlap_arg(const Trajectory& traj) {
  double sum = 0.0;
  for (int k = 0; k < traj.segments(); ++k) {
    sum += principal_arg(inner(traj.state(k), traj.state(k + 1)));
  }
  return sum;
}

double expectation_route(const Trajectory& traj) {
  const auto& h = *traj.generator();
  const auto& grid = traj.grid();
  // Trapezoid of <psi(t)|H(t)|psi(t)> over the grid.
  auto expect = [&](int k) {
    return std::real(
        traj.state(k).vec().dot(h.at(grid.time(k)) * traj.state(k).vec()));
  };
  double sum = 0.0;
  double prev = expect(0);
  for (int k = 0; k < traj.segments(); ++k) {
    double next = expect(k + 1);
    sum += 0.5 * grid.dt(k) * (prev + next);
    prev = next;
  }
  return -sum;
}

}  // namespace

double pancharatnam_phase(const StateVector& a, const StateVector& b,
                          double orth_tol) {
  Complex g = inner(a, b);
  if (std::abs(g) <= orth_tol) {
    throw OrthogonalStates(
        "pancharatnam_phase: |<a|b>| = " + std::to_string(std::abs(g)) +
        " is at or below the orthogonality tolerance; relative phase undefined");
  }
  return principal_arg(g);
}

double dynamical_phase(const Trajectory& traj, DynamicalRoute route) {
  if (route == DynamicalRoute::Auto) {
    route = traj.generator() ? DynamicalRoute::Generator : DynamicalRoute::Overlap;
  }
  if (route == DynamicalRoute::Generator) {
    if (!traj.generator()) {
      throw InvalidArgument(
          "dynamical_phase: trajectory carries no generator; use the overlap "
          "route");
    }
    return expectation_route(traj);
  }
  return accumulated_overlap_arg(traj);
}

double geometric_phase_open(const Trajectory& traj, double orth_tol) {
  double total = pancharatnam_phase(traj.state(0), traj.state(traj.segments()),
                                    orth_tol);
  return principal_angle(total - accumulated_overlap_arg(traj));
}

double geometric_phase_cyclic(const Trajectory& traj, double cyclic_tol,
                              double orth_tol) {
  if (!is_cyclic(traj, cyclic_tol)) {
    throw NotCyclic(
        "geometric_phase_cyclic: trajectory does not close in ray space");
  }
  return geometric_phase_open(traj, orth_tol);
}

PhaseDecomposition decompose(const Trajectory& traj, double orth_tol) {
  PhaseDecomposition d;
  d.total = pancharatnam_phase(traj.state(0), traj.state(traj.segments()),
                               orth_tol);
  d.dynamical = dynamical_phase(traj, DynamicalRoute::Auto);
  d.geometric = geometric_phase_open(traj, orth_tol);
  d.segment = {traj.grid().front(), traj.grid().back()};
  return d;
}

BargmannInvariant bargmann_invariant(std::span<const StateVector> states) {
  if (states.size() < 3) {
    throw InvalidArgument("bargmann_invariant: need at least 3 states, got " +
                          std::to_string(states.size()));
  }
  int dim = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != dim) {
      throw DimensionMismatch("bargmann_invariant: inconsistent state dims");
    }
  }
  Complex value = 1.0;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    value *= inner(states[k], states[k + 1]);
  }
  value *= inner(states.back(), states.front());  // close the loop
  BargmannInvariant b;
  b.value = value;
  b.order = static_cast<int>(states.size());
  b.defined = std::abs(value) > 0.0;
  b.argument = b.defined ? principal_arg(value) : 0.0;
  return b;
}

ExcessPhase excess_geometric_phase(const Trajectory& traj, int mid_index,
                                   double orth_tol) {
  int last = traj.segments();
  if (mid_index <= 0 || mid_index >= last) {
    throw InvalidArgument("excess_geometric_phase: split index " +
                          std::to_string(mid_index) +
                          " must be strictly interior");
  }
  const StateVector sampled[3] = {traj.state(0), traj.state(mid_index),
                                  traj.state(last)};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(inner(sampled[i], sampled[(i + 1) % 3])) <= orth_tol) {
      throw OrthogonalStates(
          "excess_geometric_phase: sampled endpoints contain an orthogonal "
          "pair");
    }
  }
  ExcessPhase e;
  e.lhs = principal_angle(geometric_phase_open(traj.slice(0, mid_index), orth_tol) +
                          geometric_phase_open(traj.slice(mid_index, last), orth_tol) -
                          geometric_phase_open(traj, orth_tol));
  e.invariant = bargmann_invariant(std::span<const StateVector>(sampled, 3));
  e.rhs = e.invariant.argument;
  return e;
}

}  // namespace phaselab
