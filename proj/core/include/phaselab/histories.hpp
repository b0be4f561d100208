#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaselab/evolution.hpp"

namespace phaselab {

/// Projectors in history propositions must be Hermitian-idempotent within
/// this tolerance; complete families must resolve the identity within it.
inline constexpr double kProjectorTol = 1e-10;

struct HistoryEvent {
  double time;
  SquareMatrix projector;
};

/// Time-ordered sequence of projective events. Event times are absolute:
/// propagators are referenced to t = 0, where the initial density matrix
/// lives.
class HistoryProposition {
 public:
  HistoryProposition(std::vector<HistoryEvent> events, std::string label = "",
                     double projector_tol = kProjectorTol);

  /// Chain of rank-1 projectors |psi(t_i)><psi(t_i)|.
  static HistoryProposition fine_grained(const std::vector<double>& times,
                                         const std::vector<StateVector>& states,
                                         std::string label = "");

  /// The trivial proposition: identity projector at one time.
  static HistoryProposition identity(int dim, double time = 0.0,
                                     std::string label = "I");

  const std::vector<HistoryEvent>& events() const { return events_; }
  const std::string& label() const { return label_; }
  int dim() const { return events_.front().projector.dim(); }
  int size() const { return static_cast<int>(events_.size()); }

 private:
  std::vector<HistoryEvent> events_;
  std::string label_;
};

/// Histories over one shared time grid. With completeness_flag set, the
/// distinct projectors used at each time must be mutually orthogonal and sum
/// to the identity, and the members must enumerate every branch sequence, so
/// the weight operators resolve the identity and diagonal values can be read
/// as candidate probabilities.
class HistoryFamily {
 public:
  HistoryFamily(std::vector<HistoryProposition> members, bool completeness_flag,
                double tol = kProjectorTol);

  /// All branch sequences over per-time orthogonal decompositions; labels are
  /// branch-index tuples like "1,0,2".
  static HistoryFamily complete_product(
      const std::vector<double>& times,
      const std::vector<std::vector<SquareMatrix>>& decompositions,
      double tol = kProjectorTol);

  const std::vector<HistoryProposition>& members() const { return members_; }
  bool complete() const { return complete_; }
  int size() const { return static_cast<int>(members_.size()); }
  int dim() const { return members_.front().dim(); }

 private:
  std::vector<HistoryProposition> members_;
  bool complete_;
};

/// One matrix element of the decoherence functional.
struct DecoherenceValue {
  Complex value;
  std::pair<std::string, std::string> pair;
};

/// Max residuals of the four decoherence-functional axioms over a family.
struct AxiomReport {
  double hermiticity_max;      ///< max |d(P,Q) - conj d(Q,P)|
  double positivity_min_real;  ///< min Re d(P,P)
  double positivity_max_imag;  ///< max |Im d(P,P)|
  double additivity_max;       ///< max |d(P(+)P',Q) - d(P,Q) - d(P',Q)|
  double normalization_residual;  ///< |d(I,I) - 1|
};

struct ConsistencyReport {
  bool consistent;
  double max_offdiag;
  std::vector<double> probabilities;
};

/// Ordered product of Heisenberg-picture projectors,
/// C_P = Pi_n(t_n) ... Pi_1(t_1) with Pi(t) = U(t)^dag Pi U(t) and U(t) the
/// propagator from 0 to t. Reduces to the bare product for a Zero generator.
SquareMatrix weight_operator(const HistoryProposition& p,
                             const HamiltonianSpec& h, double max_dt = 1e-3);

/// d(P, Q) = Tr(C_P rho0 C_Q^dag). rho0 must be Hermitian, positive
/// semidefinite and unit-trace within tol.
DecoherenceValue decoherence_functional(const HistoryProposition& p,
                                        const HistoryProposition& q,
                                        const SquareMatrix& rho0,
                                        const HamiltonianSpec& h,
                                        double max_dt = 1e-3,
                                        double density_tol = kProjectorTol);

AxiomReport check_axioms(const HistoryFamily& family, const SquareMatrix& rho0,
                         const HamiltonianSpec& h, double max_dt = 1e-3,
                         double density_tol = kProjectorTol);

/// consistent iff max |d(P,Q)|, P != Q, stays below tol; the diagonal then
/// carries probabilities. Requires a complete family.
ConsistencyReport consistency_check(const HistoryFamily& family,
                                    const SquareMatrix& rho0,
                                    const HamiltonianSpec& h, double tol,
                                    double max_dt = 1e-3,
                                    double density_tol = kProjectorTol);

/// Trace of the weight operator of a fine-grained chain with zero
/// Hamiltonian: <psi_0|psi_n><psi_n|psi_{n-1}> ... <psi_1|psi_0>. Equal to
/// the complex conjugate of the closed Bargmann invariant of the chain.
Complex fine_grained_trace(std::span<const StateVector> states);

/// Arg of fine_grained_trace: the geometric phase carried by a fine-grained
/// history. Converges to the geometric phase of the underlying closed curve
/// with error O(1/n). Throws OrthogonalStates on a zero trace.
double history_geometric_phase(std::span<const StateVector> states);

/// Validate a density matrix (Hermitian, PSD, unit trace within tol).
void validate_density_matrix(const SquareMatrix& rho, double tol = kProjectorTol);

}  // namespace phaselab
