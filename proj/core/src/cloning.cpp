#include "phaselab/cloning.hpp"

#include <cmath>
#include <queue>

#include "phaselab/errors.hpp"

namespace phaselab {

const char* to_string(Verdict v) {
  return v == Verdict::Feasible ? "Feasible" : "Infeasible";
}

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::NonOrthogonalOverlap: return "NonOrthogonalOverlap";
    case ConstraintKind::RayPhaseMismatch: return "RayPhaseMismatch";
    case ConstraintKind::BargmannObstruction: return "BargmannObstruction";
    case ConstraintKind::AncillaGramInvalid: return "AncillaGramInvalid";
  }
  return "?";
}

CloningFeasibilityReport clonability_check(const CloningSpec& spec,
                                           double phase_tol) {
  const auto& states = spec.inputs;
  if (states.empty()) {
    throw InvalidArgument("clonability_check: need at least one input state");
  }
  int m = static_cast<int>(states.size());
  int dim = states.front().dim();
  for (const auto& s : states) {
    if (s.dim() != dim) {
      throw DimensionMismatch("clonability_check: inconsistent input dims");
    }
  }

  CloningFeasibilityReport report;
  Eigen::MatrixXcd gram(m, m);
  for (int i = 0; i < m; ++i) {
    gram(i, i) = 1.0;
    for (int j = i + 1; j < m; ++j) {
      gram(i, j) = inner(states[i], states[j]);
      gram(j, i) = std::conj(gram(i, j));
    }
  }

  // Unitarity forces g = e^{i(theta_j - theta_i)} g^2 pairwise, so |g| must be
  // 0 or 1. Unit-modulus pairs leave a phase constraint; zero-overlap pairs
  // leave none.
  std::vector<std::pair<int, int>> unit_edges;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double mod = std::abs(gram(i, j));
      if (mod <= phase_tol) continue;
      if (std::abs(mod - 1.0) <= phase_tol) {
        unit_edges.emplace_back(i, j);
      } else {
        report.violated_constraints.push_back(
            {ConstraintKind::NonOrthogonalOverlap,
             {i, j},
             std::abs(mod - std::round(mod))});
      }
    }
  }

  bool phases_negotiable = spec.phase_freedom || spec.allow_ancilla;
  if (!phases_negotiable) {
    // theta fixed to zero: every unit-modulus overlap must already be +1.
    for (auto [i, j] : unit_edges) {
      double residual = std::abs(principal_arg(gram(i, j)));
      if (residual > phase_tol) {
        report.violated_constraints.push_back(
            {ConstraintKind::RayPhaseMismatch, {i, j}, residual});
      }
    }
  } else {
    // Spanning-forest phase assignment over the unit-overlap graph; each
    // non-tree edge closes a cycle whose mismatch is a Bargmann argument.
    std::vector<std::vector<int>> adjacency(m);
    for (auto [i, j] : unit_edges) {
      adjacency[i].push_back(j);
      adjacency[j].push_back(i);
    }
    std::vector<double> theta(m, 0.0);
    std::vector<bool> visited(m, false);
    std::vector<std::pair<int, int>> tree_edges;
    for (int root = 0; root < m; ++root) {
      if (visited[root]) continue;
      visited[root] = true;
      std::queue<int> frontier;
      frontier.push(root);
      while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop();
        for (int j : adjacency[i]) {
          if (visited[j]) continue;
          visited[j] = true;
          theta[j] = theta[i] - principal_arg(gram(i, j));
          tree_edges.emplace_back(std::min(i, j), std::max(i, j));
          frontier.push(j);
        }
      }
    }
    auto is_tree_edge = [&](int i, int j) {
      for (auto [a, b] : tree_edges) {
        if (a == i && b == j) return true;
      }
      return false;
    };
    for (auto [i, j] : unit_edges) {
      if (is_tree_edge(i, j)) continue;
      double residual = angle_residual(theta[j] - theta[i] + principal_arg(gram(i, j)));
      if (residual > phase_tol) {
        report.violated_constraints.push_back(
            {spec.allow_ancilla ? ConstraintKind::AncillaGramInvalid
                                : ConstraintKind::BargmannObstruction,
             {i, j},
             residual});
      }
    }
    if (spec.allow_ancilla && !unit_edges.empty()) {
      // Witness ancilla Gram <A_i|A_j> = e^{i(theta_j - theta_i)}; on unit
      // edges this is the required e^{-i Arg g_ij}, elsewhere a free choice
      // consistent with the forest (all ancillas in one ray).
      Eigen::MatrixXcd witness(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          witness(i, j) = unit_phase(theta[j] - theta[i]);
        }
      }
      report.required_ancilla_overlaps = SquareMatrix(std::move(witness));
      report.note =
          "required_ancilla_overlaps is a witness assignment with all ancilla "
          "states in one ray; entries for unconstrained pairs are a free "
          "choice";
    }
  }

  report.verdict = report.violated_constraints.empty() ? Verdict::Feasible
                                                       : Verdict::Infeasible;
  return report;
}

CloningFeasibilityReport history_cloning_check(const Trajectory& traj,
                                               double cyclic_tol,
                                               double phase_tol) {
  auto phi = is_cyclic(traj, cyclic_tol);
  if (!phi) {
    throw NotCyclic(
        "history_cloning_check: trajectory does not close in ray space");
  }
  CloningFeasibilityReport report;
  double residual = angle_residual(*phi);
  if (residual > phase_tol) {
    report.verdict = Verdict::Infeasible;
    report.violated_constraints.push_back(
        {ConstraintKind::RayPhaseMismatch, {0, traj.segments()}, residual});
  } else {
    report.verdict = Verdict::Feasible;
  }
  report.note =
      "total phase of the cycle; under parallel transport this phase is "
      "purely geometric, so the verdict keys on the path memory";
  return report;
}

CpHistoryVerdict cp_history_check(double phi, Complex ancilla_overlap,
                                  double phase_tol) {
  double mod = std::abs(ancilla_overlap);
  if (mod > 1.0 + 1e-12) {
    throw InvalidArgument(
        "cp_history_check: |ancilla overlap| = " + std::to_string(mod) +
        " exceeds 1; not a valid state overlap");
  }
  CpHistoryVerdict v;
  v.required_overlap = unit_phase(-phi);
  v.residual = std::abs(ancilla_overlap - v.required_overlap);
  v.verdict = v.residual <= phase_tol ? Verdict::Feasible : Verdict::Infeasible;
  return v;
}

CloningFeasibilityReport multi_time_cloning_check(const Trajectory& traj,
                                                  std::array<int, 3> indices,
                                                  double phase_tol,
                                                  double orth_tol) {
  int last = traj.segments();
  if (!(0 <= indices[0] && indices[0] < indices[1] && indices[1] < indices[2] &&
        indices[2] <= last)) {
    throw InvalidArgument(
        "multi_time_cloning_check: indices must be strictly increasing and in "
        "range");
  }
  const StateVector sampled[3] = {traj.state(indices[0]), traj.state(indices[1]),
                                  traj.state(indices[2])};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(inner(sampled[i], sampled[(i + 1) % 3])) <= orth_tol) {
      throw OrthogonalStates(
          "multi_time_cloning_check: sampled snapshots contain an orthogonal "
          "pair");
    }
  }
  BargmannInvariant delta =
      bargmann_invariant(std::span<const StateVector>(sampled, 3));
  CloningFeasibilityReport report;
  double residual = angle_residual(delta.argument);
  if (residual > phase_tol) {
    report.verdict = Verdict::Infeasible;
    report.violated_constraints.push_back({ConstraintKind::BargmannObstruction,
                                           {indices[0], indices[1], indices[2]},
                                           residual});
  } else {
    report.verdict = Verdict::Feasible;
  }
  report.note =
      "Arg of the three-point Bargmann invariant equals the excess geometric "
      "phase of the split path (see excess_geometric_phase)";
  return report;
}

}  // namespace phaselab
