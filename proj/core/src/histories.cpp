#include "phaselab/histories.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phaselab/errors.hpp"

namespace phaselab {

HistoryProposition::HistoryProposition(std::vector<HistoryEvent> events,
                                       std::string label, double projector_tol)
    : events_(std::move(events)), label_(std::move(label)) {
  if (events_.empty()) {
    throw InvalidArgument("HistoryProposition: need at least one event");
  }
  int dim = events_.front().projector.dim();
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto& e = events_[i];
    if (e.projector.dim() != dim) {
      throw DimensionMismatch("HistoryProposition: inconsistent projector dims");
    }
    if (!std::isfinite(e.time)) {
      throw InvalidArgument("HistoryProposition: non-finite event time");
    }
    if (!e.projector.is_projector(projector_tol)) {
      throw InvalidArgument("HistoryProposition: event " + std::to_string(i) +
                            " is not Hermitian-idempotent within tolerance");
    }
    if (i > 0 && !(e.time > events_[i - 1].time)) {
      throw InvalidArgument(
          "HistoryProposition: event times must be strictly increasing");
    }
  }
}

HistoryProposition HistoryProposition::fine_grained(
    const std::vector<double>& times, const std::vector<StateVector>& states,
    std::string label) {
  if (times.size() != states.size()) {
    throw InvalidArgument(
        "HistoryProposition::fine_grained: times and states differ in length");
  }
  std::vector<HistoryEvent> events;
  events.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    events.push_back({times[i], projector(states[i])});
  }
  return HistoryProposition(std::move(events), std::move(label));
}

HistoryProposition HistoryProposition::identity(int dim, double time,
                                                std::string label) {
  return HistoryProposition({{time, SquareMatrix::identity(dim)}},
                            std::move(label));
}

namespace {

/// Index of `m` in `pool` up to entrywise tolerance, or -1.
int find_matching(const std::vector<SquareMatrix>& pool, const SquareMatrix& m,
                  double tol) {
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].distance(m) <= tol) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

HistoryFamily::HistoryFamily(std::vector<HistoryProposition> members,
                             bool completeness_flag, double tol)
    : members_(std::move(members)), complete_(completeness_flag) {
  if (members_.empty()) {
    throw InvalidArgument("HistoryFamily: need at least one member");
  }
  const auto& first = members_.front();
  int dim = first.dim();
  int n_times = first.size();
  for (const auto& p : members_) {
    if (p.dim() != dim) throw DimensionMismatch("HistoryFamily: mixed dims");
    if (p.size() != n_times) {
      throw InvalidArgument("HistoryFamily: members must share one time grid");
    }
    for (int t = 0; t < n_times; ++t) {
      if (p.events()[t].time != first.events()[t].time) {
        throw InvalidArgument("HistoryFamily: members must share one time grid");
      }
    }
  }
  if (!complete_) return;

  // Completeness: at each time the distinct projectors in use are mutually
  // orthogonal and resolve the identity, and the members enumerate every
  // branch sequence, so the weight operators sum to the identity.
  std::vector<std::vector<int>> branch_of_member(members_.size(),
                                                 std::vector<int>(n_times));
  std::size_t expected_members = 1;
  for (int t = 0; t < n_times; ++t) {
    std::vector<SquareMatrix> distinct;
    for (std::size_t p = 0; p < members_.size(); ++p) {
      const SquareMatrix& proj = members_[p].events()[t].projector;
      int idx = find_matching(distinct, proj, tol);
      if (idx < 0) {
        idx = static_cast<int>(distinct.size());
        distinct.push_back(proj);
      }
      branch_of_member[p][t] = idx;
    }
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < distinct.size(); ++a) {
      sum += distinct[a].mat();
      for (std::size_t b = a + 1; b < distinct.size(); ++b) {
        double cross = (distinct[a].mat() * distinct[b].mat()).cwiseAbs().maxCoeff();
        if (cross > tol) {
          throw InvalidArgument(
              "HistoryFamily: projectors at time index " + std::to_string(t) +
              " are not mutually orthogonal");
        }
      }
    }
    if ((sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
      throw InvalidArgument("HistoryFamily: projectors at time index " +
                            std::to_string(t) + " do not sum to the identity");
    }
    expected_members *= distinct.size();
  }
  if (members_.size() != expected_members) {
    throw InvalidArgument(
        "HistoryFamily: a complete family must enumerate every branch "
        "sequence (" + std::to_string(expected_members) + " expected, " +
        std::to_string(members_.size()) + " given)");
  }
  std::sort(branch_of_member.begin(), branch_of_member.end());
  if (std::adjacent_find(branch_of_member.begin(), branch_of_member.end()) !=
      branch_of_member.end()) {
    throw InvalidArgument("HistoryFamily: duplicate branch sequences");
  }
}

HistoryFamily HistoryFamily::complete_product(
    const std::vector<double>& times,
    const std::vector<std::vector<SquareMatrix>>& decompositions, double tol) {
  if (times.empty() || times.size() != decompositions.size()) {
    throw InvalidArgument(
        "HistoryFamily::complete_product: need one decomposition per time");
  }
  std::vector<HistoryProposition> members;
  std::vector<int> branch(times.size(), 0);
  while (true) {
    std::vector<HistoryEvent> events;
    std::string label;
    for (std::size_t t = 0; t < times.size(); ++t) {
      events.push_back({times[t], decompositions[t][branch[t]]});
      label += (t ? "," : "") + std::to_string(branch[t]);
    }
    members.emplace_back(std::move(events), std::move(label), tol);
    // Odometer increment over branch indices.
    std::size_t t = 0;
    for (; t < times.size(); ++t) {
      if (++branch[t] < static_cast<int>(decompositions[t].size())) break;
      branch[t] = 0;
    }
    if (t == times.size()) break;
  }
  return HistoryFamily(std::move(members), true, tol);
}

void validate_density_matrix(const SquareMatrix& rho, double tol) {
  if (!rho.is_hermitian(tol)) {
    throw InvalidArgument("density matrix is not Hermitian within tolerance");
  }
  if (std::abs(rho.mat().trace() - Complex(1.0, 0.0)) > tol) {
    throw InvalidArgument("density matrix trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.mat());
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -tol) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

SquareMatrix weight_operator(const HistoryProposition& p,
                             const HamiltonianSpec& h, double max_dt) {
  if (p.dim() != h.dim()) {
    throw DimensionMismatch("weight_operator: history dim " +
                            std::to_string(p.dim()) + " vs Hamiltonian dim " +
                            std::to_string(h.dim()));
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(p.dim(), p.dim());
  for (const auto& event : p.events()) {  // ascending times; later acts leftmost
    if (h.kind() == HamiltonianSpec::Kind::Zero) {
      c = event.projector.mat() * c;
    } else {
      Eigen::MatrixXcd u = propagator(h, 0.0, event.time, max_dt).mat();
      c = u.adjoint() * event.projector.mat() * u * c;
    }
  }
  return SquareMatrix(std::move(c));
}

DecoherenceValue decoherence_functional(const HistoryProposition& p,
                                        const HistoryProposition& q,
                                        const SquareMatrix& rho0,
                                        const HamiltonianSpec& h, double max_dt,
                                        double density_tol) {
  if (rho0.dim() != p.dim() || rho0.dim() != q.dim()) {
    throw DimensionMismatch("decoherence_functional: dimension mismatch");
  }
  validate_density_matrix(rho0, density_tol);
  Eigen::MatrixXcd cp = weight_operator(p, h, max_dt).mat();
  Eigen::MatrixXcd cq = weight_operator(q, h, max_dt).mat();
  Complex value = (cp * rho0.mat() * cq.adjoint()).trace();
  return DecoherenceValue{value, {p.label(), q.label()}};
}

AxiomReport check_axioms(const HistoryFamily& family, const SquareMatrix& rho0,
                         const HamiltonianSpec& h, double max_dt,
                         double density_tol) {
  validate_density_matrix(rho0, density_tol);
  if (rho0.dim() != family.dim() || family.dim() != h.dim()) {
    throw DimensionMismatch("check_axioms: dimension mismatch");
  }
  int k = family.size();
  std::vector<Eigen::MatrixXcd> weights;
  weights.reserve(k);
  for (const auto& p : family.members()) {
    weights.push_back(weight_operator(p, h, max_dt).mat());
  }
  auto d = [&](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a * rho0.mat() * b.adjoint()).trace();
  };

  Eigen::MatrixXcd dmat(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) dmat(i, j) = d(weights[i], weights[j]);
  }

  AxiomReport report{};
  report.hermiticity_max = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      report.hermiticity_max = std::max(
          report.hermiticity_max, std::abs(dmat(i, j) - std::conj(dmat(j, i))));
    }
  }
  report.positivity_min_real = dmat(0, 0).real();
  report.positivity_max_imag = 0.0;
  for (int i = 0; i < k; ++i) {
    report.positivity_min_real =
        std::min(report.positivity_min_real, dmat(i, i).real());
    report.positivity_max_imag =
        std::max(report.positivity_max_imag, std::abs(dmat(i, i).imag()));
  }
  // Additivity over orthogonal sums: the weight of P (+) P' is C_P + C_P'.
  report.additivity_max = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      Eigen::MatrixXcd summed = weights[i] + weights[j];
      for (int q = 0; q < k; ++q) {
        double residual =
            std::abs(d(summed, weights[q]) - dmat(i, q) - dmat(j, q));
        report.additivity_max = std::max(report.additivity_max, residual);
      }
    }
  }
  Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(family.dim(), family.dim());
  report.normalization_residual = std::abs(d(identity, identity) - Complex(1.0));
  return report;
}

ConsistencyReport consistency_check(const HistoryFamily& family,
                                    const SquareMatrix& rho0,
                                    const HamiltonianSpec& h, double tol,
                                    double max_dt, double density_tol) {
  if (!family.complete()) {
    throw InvalidArgument(
        "consistency_check: probabilities are only meaningful for a complete "
        "family");
  }
  validate_density_matrix(rho0, density_tol);
  if (rho0.dim() != family.dim() || family.dim() != h.dim()) {
    throw DimensionMismatch("consistency_check: dimension mismatch");
  }
  int k = family.size();
  std::vector<Eigen::MatrixXcd> weights;
  weights.reserve(k);
  for (const auto& p : family.members()) {
    weights.push_back(weight_operator(p, h, max_dt).mat());
  }
  ConsistencyReport report;
  report.max_offdiag = 0.0;
  report.probabilities.reserve(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      Complex value = (weights[i] * rho0.mat() * weights[j].adjoint()).trace();
      if (i == j) {
        report.probabilities.push_back(value.real());
      } else {
        report.max_offdiag = std::max(report.max_offdiag, std::abs(value));
      }
    }
  }
  report.consistent = report.max_offdiag < tol;
  return report;
}

Complex fine_grained_trace(std::span<const StateVector> states) {
  if (states.size() < 2) {
    throw InvalidArgument("fine_grained_trace: need at least two states");
  }
  int dim = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != dim) {
      throw DimensionMismatch("fine_grained_trace: inconsistent state dims");
    }
  }
  std::size_t n = states.size() - 1;
  Complex value = inner(states[0], states[n]);
  for (std::size_t k = n; k >= 1; --k) {
    value *= inner(states[k], states[k - 1]);
  }
  return value;
}

double history_geometric_phase(std::span<const StateVector> states) {
  Complex trace = fine_grained_trace(states);
  if (std::abs(trace) == 0.0) {
    throw OrthogonalStates(
        "history_geometric_phase: zero trace (orthogonal link in the chain)");
  }
  return principal_arg(trace);
}

}  // namespace phaselab
