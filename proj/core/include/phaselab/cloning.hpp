#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "phaselab/phases.hpp"

namespace phaselab {

/// Phases and overlap moduli within this of their required values count as
/// satisfied when deciding feasibility verdicts.
inline constexpr double kPhaseTol = 1e-8;

/// A finite set of states offered to one hypothetical cloning machine.
/// phase_freedom lets the machine attach an arbitrary output phase theta(psi)
/// to each input; allow_ancilla lets it dump phase into an ancilla register.
struct CloningSpec {
  std::vector<StateVector> inputs;
  bool allow_ancilla = false;
  bool phase_freedom = false;
};

enum class Verdict { Feasible, Infeasible };

enum class ConstraintKind {
  NonOrthogonalOverlap,  ///< |<psi_i|psi_j>| strictly between 0 and 1.
  RayPhaseMismatch,      ///< unit-modulus overlap with nonzero phase, no freedom left.
  BargmannObstruction,   ///< phase assignment inconsistent around a cycle.
  AncillaGramInvalid,    ///< required ancilla overlaps admit no valid Gram matrix.
};

const char* to_string(Verdict v);
const char* to_string(ConstraintKind k);

/// One violated unitarity constraint; indices has two entries for a pair
/// constraint and three for a triple (cycle) constraint.
struct CloningViolation {
  ConstraintKind kind;
  std::vector<int> indices;
  double residual;
};

struct CloningFeasibilityReport {
  Verdict verdict;
  std::vector<CloningViolation> violated_constraints;
  /// When an ancilla is allowed and phase constraints exist: a witness
  /// assignment of the ancilla-state overlaps the machine would need,
  /// <A_i|A_j> = e^{i(phi_j - phi_i)} from the spanning-forest phases
  /// (unconstrained pairs filled from the same phases, a valid free choice).
  std::optional<SquareMatrix> required_ancilla_overlaps;
  std::string note;
};

/// Decide whether one inner-product-preserving machine can clone every input.
///
/// Unitarity forces |g_ij| in {0, 1} for every pairwise overlap g_ij, and on
/// unit-modulus pairs a phase budget: theta_j - theta_i = -Arg g_ij when the
/// output phases are free, theta identically zero otherwise. Phase
/// consistency is solved by spanning-forest assignment; any cycle mismatch is
/// exactly a Bargmann argument.
CloningFeasibilityReport clonability_check(const CloningSpec& spec,
                                           double phase_tol = kPhaseTol);

/// Audit copying of the (initial, final) pair of a cyclic evolution: cloning
/// both points of the ray would square e^{i Phi}, so any nonzero total phase
/// Phi mod 2*pi is an obstruction. Under parallel transport Phi is purely
/// geometric, so this is exactly the memory of the traversed path.
CloningFeasibilityReport history_cloning_check(const Trajectory& traj,
                                               double cyclic_tol = 1e-6,
                                               double phase_tol = kPhaseTol);

struct CpHistoryVerdict {
  Verdict verdict;
  double residual;
  Complex required_overlap;
};

/// Completely-positive-map escape hatch: with an ancilla, unitarity in the
/// enlarged space demands e^{i phi} = e^{2 i phi} <A(0)|A(T)>, i.e. the
/// ancilla overlap must equal e^{-i phi} exactly (unit modulus). Throws
/// InvalidArgument when |ancilla_overlap| exceeds 1 beyond rounding.
CpHistoryVerdict cp_history_check(double phi, Complex ancilla_overlap,
                                  double phase_tol = kPhaseTol);

/// Audit cloning of three snapshots of one evolution: unitarity squares the
/// three-point Bargmann invariant, so feasibility requires Arg Delta = 0
/// (mod 2*pi). The argument equals the excess geometric phase of the split
/// path, so the verdict keys on exactly the path memory.
CloningFeasibilityReport multi_time_cloning_check(const Trajectory& traj,
                                                  std::array<int, 3> indices,
                                                  double phase_tol = kPhaseTol,
                                                  double orth_tol = kOrthTol);

}  // namespace phaselab
