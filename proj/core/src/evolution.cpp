#include "phaselab/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "phaselab/errors.hpp"
#include "phaselab/transport.hpp"

namespace phaselab {

namespace {

void require_hermitian(const SquareMatrix& m, const char* who) {
  if (!m.is_hermitian(HamiltonianSpec::kHermitianTol)) {
    throw InvalidArgument(std::string(who) + ": matrix is not Hermitian within " +
                          std::to_string(HamiltonianSpec::kHermitianTol));
  }
}

/// exp(-i H dt) for Hermitian H, via eigendecomposition. Unitary to rounding.
Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw InvalidArgument("propagator: eigendecomposition failed");
  }
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = unit_phase(-lam(i) * dt);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

HamiltonianSpec HamiltonianSpec::zero(int dim) {
  if (dim < 1) throw InvalidArgument("HamiltonianSpec: dim must be >= 1");
  return HamiltonianSpec(Kind::Zero, dim);
}

HamiltonianSpec HamiltonianSpec::static_field(SquareMatrix h) {
  require_hermitian(h, "HamiltonianSpec::static_field");
  HamiltonianSpec spec(Kind::Static, h.dim());
  spec.samples_.emplace_back(0.0, std::move(h));
  return spec;
}

HamiltonianSpec HamiltonianSpec::sampled(
    std::vector<std::pair<double, SquareMatrix>> samples) {
  if (samples.size() < 2) {
    throw InvalidArgument("HamiltonianSpec::sampled: need at least two samples");
  }
  int dim = samples.front().second.dim();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_hermitian(samples[i].second, "HamiltonianSpec::sampled");
    if (samples[i].second.dim() != dim) {
      throw DimensionMismatch("HamiltonianSpec::sampled: inconsistent dims");
    }
    if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
      throw InvalidArgument(
          "HamiltonianSpec::sampled: sample times must be strictly increasing");
    }
  }
  HamiltonianSpec spec(Kind::Sampled, dim);
  spec.samples_ = std::move(samples);
  return spec;
}

const SquareMatrix& HamiltonianSpec::static_matrix() const {
  if (kind_ != Kind::Static) {
    throw InvalidArgument("HamiltonianSpec: not a static Hamiltonian");
  }
  return samples_.front().second;
}

Eigen::MatrixXcd HamiltonianSpec::at(double t) const {
  switch (kind_) {
    case Kind::Zero:
      return Eigen::MatrixXcd::Zero(dim_, dim_);
    case Kind::Static:
      return samples_.front().second.mat();
    case Kind::Sampled:
      break;
  }
  // Piecewise-linear interpolation, clamped at the ends.
  if (t <= samples_.front().first) return samples_.front().second.mat();
  if (t >= samples_.back().first) return samples_.back().second.mat();
  auto hi = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double value, const auto& s) { return value < s.first; });
  auto lo = hi - 1;
  double w = (t - lo->first) / (hi->first - lo->first);
  return (1.0 - w) * lo->second.mat() + w * hi->second.mat();
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) {
    throw InvalidArgument("TimeGrid: need at least two times");
  }
  if (!std::isfinite(times_[0])) throw InvalidArgument("TimeGrid: non-finite time");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) throw InvalidArgument("TimeGrid: non-finite time");
    if (!(times_[k] > times_[k - 1])) {
      throw InvalidArgument("TimeGrid: times must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::uniform(double t0, double t1, int steps) {
  if (steps < 1) throw InvalidArgument("TimeGrid::uniform: steps must be >= 1");
  if (!(t1 > t0)) throw InvalidArgument("TimeGrid::uniform: need t1 > t0");
  std::vector<double> times(steps + 1);
  double dt = (t1 - t0) / steps;
  for (int k = 0; k <= steps; ++k) times[k] = t0 + k * dt;
  times.back() = t1;
  return TimeGrid(std::move(times));
}

Trajectory::Trajectory(TimeGrid grid, std::vector<StateVector> states,
                       std::optional<HamiltonianSpec> generator)
    : grid_(std::move(grid)),
      states_(std::move(states)),
      generator_(std::move(generator)) {
  if (states_.size() != static_cast<std::size_t>(grid_.size())) {
    throw InvalidArgument("Trajectory: " + std::to_string(states_.size()) +
                          " states for " + std::to_string(grid_.size()) +
                          " grid times");
  }
  int d = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != d) throw DimensionMismatch("Trajectory: inconsistent state dims");
  }
  if (generator_ && generator_->dim() != d) {
    throw DimensionMismatch("Trajectory: generator dim differs from states");
  }
  for (std::size_t k = 0; k + 1 < states_.size(); ++k) {
    double overlap = std::abs(inner(states_[k], states_[k + 1]));
    if (overlap <= kOverlapFloor) {
      throw OverlapCollapse(
          "Trajectory: consecutive overlap " + std::to_string(overlap) +
          " at step " + std::to_string(k) +
          " is at or below 0.5; the grid is too coarse for phase extraction");
    }
  }
}

Trajectory Trajectory::slice(int first, int last) const {
  if (first < 0 || last >= static_cast<int>(states_.size()) || first >= last) {
    throw InvalidArgument("Trajectory::slice: invalid range [" +
                          std::to_string(first) + ", " + std::to_string(last) +
                          "]");
  }
  std::vector<double> times(grid_.times().begin() + first,
                            grid_.times().begin() + last + 1);
  std::vector<StateVector> states(states_.begin() + first,
                                  states_.begin() + last + 1);
  return Trajectory(TimeGrid(std::move(times)), std::move(states), generator_);
}

SquareMatrix step_propagator(const HamiltonianSpec& h, double t_from,
                             double t_to) {
  if (h.kind() == HamiltonianSpec::Kind::Zero || t_from == t_to) {
    return SquareMatrix::identity(h.dim());
  }
  return SquareMatrix(
      hermitian_exp(h.at(0.5 * (t_from + t_to)), t_to - t_from));
}

SquareMatrix propagator(const HamiltonianSpec& h, double t_from, double t_to,
                        double max_dt) {
  if (max_dt <= 0.0) throw InvalidArgument("propagator: max_dt must be positive");
  switch (h.kind()) {
    case HamiltonianSpec::Kind::Zero:
      return SquareMatrix::identity(h.dim());
    case HamiltonianSpec::Kind::Static:
      return SquareMatrix(
          hermitian_exp(h.static_matrix().mat(), t_to - t_from));
    case HamiltonianSpec::Kind::Sampled:
      break;
  }
  double span = t_to - t_from;
  if (span == 0.0) return SquareMatrix::identity(h.dim());
  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_dt)));
  double dt = span / steps;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(h.dim(), h.dim());
  for (int k = 0; k < steps; ++k) {
    double a = t_from + k * dt;
    double b = (k + 1 == steps) ? t_to : a + dt;
    u = hermitian_exp(h.at(0.5 * (a + b)), b - a) * u;
  }
  return SquareMatrix(std::move(u));
}

Trajectory evolve(const HamiltonianSpec& h, const StateVector& psi0,
                  const TimeGrid& grid) {
  if (h.dim() != psi0.dim()) {
    throw DimensionMismatch("evolve: Hamiltonian dim " + std::to_string(h.dim()) +
                            " vs state dim " + std::to_string(psi0.dim()));
  }
  std::vector<StateVector> states;
  states.reserve(grid.size());
  states.push_back(psi0);

  switch (h.kind()) {
    case HamiltonianSpec::Kind::Zero: {
      for (int k = 0; k < grid.steps(); ++k) states.push_back(psi0);
      break;
    }
    case HamiltonianSpec::Kind::Static: {
      // One eigendecomposition serves every step.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.static_matrix().mat());
      if (es.info() != Eigen::Success) {
        throw InvalidArgument("evolve: eigendecomposition failed");
      }
      const Eigen::VectorXd& lam = es.eigenvalues();
      const Eigen::MatrixXcd& v = es.eigenvectors();
      Eigen::VectorXcd coeff = v.adjoint() * psi0.vec();
      for (int k = 0; k < grid.steps(); ++k) {
        double dt = grid.dt(k);
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
          coeff(i) *= unit_phase(-lam(i) * dt);
        }
        states.push_back(StateVector::normalized(v * coeff));
      }
      break;
    }
    case HamiltonianSpec::Kind::Sampled: {
      for (int k = 0; k < grid.steps(); ++k) {
        Eigen::MatrixXcd u =
            hermitian_exp(h.at(0.5 * (grid.time(k) + grid.time(k + 1))),
                          grid.dt(k));
        states.push_back(StateVector::normalized(u * states.back().vec()));
      }
      break;
    }
  }
  // The Trajectory constructor enforces the overlap floor (grid coarseness).
  return Trajectory(grid, std::move(states), h);
}

Trajectory evolve_parallel(const HamiltonianSpec& h, const StateVector& psi0,
                           const TimeGrid& grid) {
  return parallel_transport(evolve(h, psi0, grid));
}

std::optional<double> is_cyclic(const Trajectory& traj, double tol) {
  Complex g = inner(traj.state(0), traj.state(traj.segments()));
  if (std::abs(g) <= 1.0 - tol) return std::nullopt;
  return principal_arg(g);
}

}  // namespace phaselab
