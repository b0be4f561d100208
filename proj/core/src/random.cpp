#include "phaselab/random.hpp"

#include "phaselab/errors.hpp"

namespace phaselab::rng {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Engine instance_engine(std::uint64_t seed, std::uint64_t index) {
  return Engine(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

double uniform(Engine& eng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng);
}

StateVector haar_state(Engine& eng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = gauss(eng);
    double im = gauss(eng);
    v(i) = Complex(re, im);
  }
  return StateVector::normalized(std::move(v));
}

SquareMatrix hermitian(Engine& eng, int dim, double spectral_norm) {
  if (spectral_norm <= 0.0) {
    throw InvalidArgument("rng::hermitian: spectral_norm must be positive");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(eng), gauss(eng));
    }
  }
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (norm < 1e-300) {
    h = Eigen::MatrixXcd::Identity(dim, dim);
    norm = 1.0;
  }
  return SquareMatrix(h * (spectral_norm / norm));
}

SquareMatrix unitary(Engine& eng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(eng), gauss(eng));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the phase convention so the factorization is unique.
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return SquareMatrix(std::move(q));
}

std::vector<StateVector> orthonormal_set(Engine& eng, int dim, int count) {
  if (count > dim) {
    throw InvalidArgument("rng::orthonormal_set: count exceeds dimension");
  }
  SquareMatrix u = unitary(eng, dim);
  std::vector<StateVector> out;
  out.reserve(count);
  for (int j = 0; j < count; ++j) {
    out.push_back(StateVector::normalized(u.mat().col(j)));
  }
  return out;
}

}  // namespace phaselab::rng
