#pragma once

#include <Eigen/Dense>

#include "phaselab/types.hpp"

namespace phaselab {

/// Dense complex square matrix with finiteness validation and the operator
/// predicates used across the toolkit. Entries are immutable after
/// construction.
class SquareMatrix {
 public:
  explicit SquareMatrix(Eigen::MatrixXcd entries);

  static SquareMatrix identity(int dim);
  static SquareMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& mat() const { return m_; }
  Complex entry(int row, int col) const { return m_(row, col); }

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_projector(double tol) const;

  /// Max absolute entrywise difference.
  double distance(const SquareMatrix& other) const;

 private:
  Eigen::MatrixXcd m_;
};

}  // namespace phaselab
