#include "phaselab/matrix.hpp"

#include "phaselab/errors.hpp"

namespace phaselab {

SquareMatrix::SquareMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InvalidArgument("SquareMatrix: expected a nonempty square matrix, got " +
                          std::to_string(m_.rows()) + "x" +
                          std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) {
    throw InvalidArgument("SquareMatrix: non-finite entry");
  }
}

SquareMatrix SquareMatrix::identity(int dim) {
  return SquareMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

SquareMatrix SquareMatrix::zero(int dim) {
  return SquareMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

bool SquareMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool SquareMatrix::is_unitary(double tol) const {
  Eigen::MatrixXcd gram = m_.adjoint() * m_;
  gram -= Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

bool SquareMatrix::is_projector(double tol) const {
  if (!is_hermitian(tol)) return false;
  return (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
}

double SquareMatrix::distance(const SquareMatrix& other) const {
  if (other.dim() != dim()) {
    throw DimensionMismatch("SquareMatrix::distance: dimension mismatch (" +
                            std::to_string(dim()) + " vs " +
                            std::to_string(other.dim()) + ")");
  }
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

}  // namespace phaselab
