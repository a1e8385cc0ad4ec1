#pragma once

#include <Eigen/Dense>

namespace inertia::detail {

// Orthonormal basis of the complement of the unit vector s (s(0) >= 0), as
// the trailing columns of the Householder reflector sending s to -e_0.
inline Eigen::MatrixXd complement_basis(const Eigen::VectorXd& s) {
  const Eigen::Index m = s.size();
  Eigen::VectorXd v = s;
  v(0) += 1.0;
  const double vv = v.squaredNorm();
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - (2.0 / vv) * v * v.transpose();
  return h.rightCols(m - 1);
}

}  // namespace inertia::detail
