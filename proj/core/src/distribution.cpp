#include "inertia/distribution.hpp"

#include "inertia/error.hpp"

#include <cmath>
#include <sstream>

namespace inertia {
namespace {

constexpr double kNegativeTolerance = 1e-12;
constexpr double kSumTolerance = 1e-9;

// Clamps -1e-12 <= x < 0 to zero; anything more negative is an error.
void clamp_negatives(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") is not finite";
        throw Error(ErrorCode::InvalidArgument, os.str());
      }
      if (v < -kNegativeTolerance) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << v << " is negative";
        throw Error(ErrorCode::NegativeEntry, os.str());
      }
      if (v < 0.0) m(i, j) = 0.0;
    }
  }
}

void require_nonempty(const Matrix& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "matrix must be at least 1x1");
  }
}

}  // namespace

JointDistribution::JointDistribution(Matrix matrix)
    : matrix_(std::move(matrix)),
      row_marginal_(matrix_.rowwise().sum()),
      col_marginal_(matrix_.colwise().sum().transpose()) {}

JointDistribution JointDistribution::validate(const Matrix& matrix) {
  require_nonempty(matrix);
  Matrix m = matrix;
  clamp_negatives(m);
  const double total = m.sum();
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os << "joint distribution sums to " << total;
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  m /= total;
  return JointDistribution(std::move(m));
}

bool JointDistribution::has_full_support() const noexcept {
  return (row_marginal_.array() > 0.0).all() && (col_marginal_.array() > 0.0).all();
}

JointDistribution JointDistribution::pruned(std::vector<Eigen::Index>* kept_rows,
                                            std::vector<Eigen::Index>* kept_cols) const {
  std::vector<Eigen::Index> rows_kept;
  std::vector<Eigen::Index> cols_kept;
  for (Eigen::Index i = 0; i < rows(); ++i) {
    if (row_marginal_(i) > 0.0) rows_kept.push_back(i);
  }
  for (Eigen::Index j = 0; j < cols(); ++j) {
    if (col_marginal_(j) > 0.0) cols_kept.push_back(j);
  }
  Matrix m(static_cast<Eigen::Index>(rows_kept.size()),
           static_cast<Eigen::Index>(cols_kept.size()));
  for (std::size_t r = 0; r < rows_kept.size(); ++r) {
    for (std::size_t c = 0; c < cols_kept.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          matrix_(rows_kept[r], cols_kept[c]);
    }
  }
  if (kept_rows != nullptr) *kept_rows = rows_kept;
  if (kept_cols != nullptr) *kept_cols = cols_kept;
  return JointDistribution(std::move(m));
}

JointDistribution JointDistribution::transposed() const {
  return JointDistribution(Matrix(matrix_.transpose()));
}

ChannelMatrix ChannelMatrix::validate(const Matrix& matrix) {
  require_nonempty(matrix);
  Matrix m = matrix;
  clamp_negatives(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double total = m.row(i).sum();
    if (std::abs(total - 1.0) > kSumTolerance) {
      std::ostringstream os;
      os << "channel row " << i << " sums to " << total;
      throw Error(ErrorCode::NotNormalized, os.str());
    }
    m.row(i) /= total;
  }
  return ChannelMatrix(std::move(m));
}

bool ChannelMatrix::is_symmetric(double tol) const {
  if (rows() != cols()) return false;
  return (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Vector validate_probability_vector(const Vector& v) {
  if (v.size() < 1) {
    throw Error(ErrorCode::InvalidDistribution, "probability vector is empty");
  }
  Vector out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out(i)) || out(i) < -kNegativeTolerance) {
      std::ostringstream os;
      os << "probability entry " << i << " = " << out(i) << " is invalid";
      throw Error(ErrorCode::InvalidDistribution, os.str());
    }
    if (out(i) < 0.0) out(i) = 0.0;
  }
  const double total = out.sum();
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os << "probability vector sums to " << total;
    throw Error(ErrorCode::InvalidDistribution, os.str());
  }
  return out / total;
}

JointDistribution joint_from_channel(const ChannelMatrix& channel, const Vector& input) {
  if (input.size() != channel.rows()) {
    std::ostringstream os;
    os << "input has " << input.size() << " entries but the channel has " << channel.rows()
       << " rows";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const Vector p = validate_probability_vector(input);
  const Matrix joint = p.asDiagonal() * channel.matrix();
  return JointDistribution::validate(joint);
}

ChannelWithInput channel_from_joint(const JointDistribution& joint, ZeroMassPolicy policy) {
  const JointDistribution& source = joint;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < source.rows(); ++i) {
    if (source.row_marginal()(i) > 0.0) {
      kept.push_back(i);
    } else if (policy == ZeroMassPolicy::Strict) {
      std::ostringstream os;
      os << "row " << i << " of the joint has zero mass";
      throw Error(ErrorCode::ZeroMarginalRow, os.str());
    }
  }
  Matrix channel(static_cast<Eigen::Index>(kept.size()), source.cols());
  Vector input(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto i = kept[r];
    const double mass = source.row_marginal()(i);
    channel.row(static_cast<Eigen::Index>(r)) = source.matrix().row(i) / mass;
    input(static_cast<Eigen::Index>(r)) = mass;
  }
  input /= input.sum();
  return {ChannelMatrix::validate(channel), input};
}

bool is_conforming(const JointDistribution& joint, double tol) {
  if (joint.rows() != joint.cols()) return false;
  const Matrix& p = joint.matrix();
  if ((p - p.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  const Eigen::MatrixXd sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -tol;
}

Vector uniform_distribution(Eigen::Index size) {
  return Vector::Constant(size, 1.0 / static_cast<double>(size));
}

bool is_uniform(const Vector& p, double tol) {
  const double u = 1.0 / static_cast<double>(p.size());
  return (p.array() - u).abs().maxCoeff() <= tol;
}

}  // namespace inertia
