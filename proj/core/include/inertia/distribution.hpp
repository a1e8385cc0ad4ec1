#pragma once

// Validated probability objects on finite alphabets [m] x [n].
//
// A JointDistribution holds the m x n mass matrix P together with its
// marginals p_X (row sums) and p_Y (column sums). A ChannelMatrix holds a
// row-stochastic conditional matrix P_{Y|X}. Both are immutable once built;
// every entry is nonnegative and the relevant sums equal one to within
// kStructuralTolerance.

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace inertia {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kDefaultTolerance = 1e-9;

// Strict rejects alphabets carrying zero mass wherever D^{-1/2} or a row
// normalization is needed; Prune drops those rows/columns first.
enum class ZeroMassPolicy { Strict, Prune };

class JointDistribution {
 public:
  // validate_joint: entries below -1e-12 are NegativeEntry, a total more than
  // 1e-9 away from one is NotNormalized. Accepted input is clamped at zero
  // and renormalized so the stored invariants hold to 1e-12.
  static JointDistribution validate(const Matrix& matrix);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Vector& row_marginal() const noexcept { return row_marginal_; }
  const Vector& col_marginal() const noexcept { return col_marginal_; }
  Eigen::Index rows() const noexcept { return matrix_.rows(); }
  Eigen::Index cols() const noexcept { return matrix_.cols(); }

  bool has_full_support() const noexcept;

  // Removes every zero-mass row and column; the kept original indices are
  // reported through the optional out-parameters.
  JointDistribution pruned(std::vector<Eigen::Index>* kept_rows = nullptr,
                           std::vector<Eigen::Index>* kept_cols = nullptr) const;

  // (X,Y) -> (Y,X).
  JointDistribution transposed() const;

 private:
  explicit JointDistribution(Matrix matrix);

  Matrix matrix_;
  Vector row_marginal_;
  Vector col_marginal_;
};

class ChannelMatrix {
 public:
  // Same entry rules as JointDistribution, applied row by row.
  static ChannelMatrix validate(const Matrix& matrix);

  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Index rows() const noexcept { return matrix_.rows(); }
  Eigen::Index cols() const noexcept { return matrix_.cols(); }

  bool is_symmetric(double tol = kDefaultTolerance) const;

 private:
  explicit ChannelMatrix(Matrix matrix) : matrix_(std::move(matrix)) {}

  Matrix matrix_;
};

struct ChannelWithInput {
  ChannelMatrix channel;
  Vector input;
};

inline JointDistribution validate_joint(const Matrix& matrix) {
  return JointDistribution::validate(matrix);
}

// Checks that v is a probability vector (entries >= -1e-12, sum within 1e-9)
// and returns it clamped and renormalized. Throws InvalidDistribution.
Vector validate_probability_vector(const Vector& v);

// P = D_X P_{Y|X}.
JointDistribution joint_from_channel(const ChannelMatrix& channel, const Vector& input);

// Inverse of joint_from_channel. Under Prune the zero-mass rows are dropped
// from both the channel and the returned input distribution.
ChannelWithInput channel_from_joint(const JointDistribution& joint,
                                    ZeroMassPolicy policy = ZeroMassPolicy::Strict);

// Square, symmetric within tol, and the symmetrized matrix has no eigenvalue
// below -tol.
bool is_conforming(const JointDistribution& joint, double tol = kDefaultTolerance);

Vector uniform_distribution(Eigen::Index size);

bool is_uniform(const Vector& p, double tol = kDefaultTolerance);

}  // namespace inertia
