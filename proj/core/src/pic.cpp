#include "inertia/pic.hpp"

#include "inertia/error.hpp"
#include "linalg_detail.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace inertia {
namespace {

constexpr double kSignTolerance = 1e-12;
constexpr double kZeroSingular = 1e-12;
constexpr double kSingularSlack = 1e-9;

}  // namespace

double PicDecomposition::maximal_correlation() const noexcept {
  return d > 0 ? singulars(1) : 0.0;
}

Vector PicDecomposition::inertia_components() const {
  return singulars.tail(d).array().square();
}

Matrix PicDecomposition::reconstruct() const {
  const Vector sx = p_x.cwiseSqrt();
  const Vector sy = p_y.cwiseSqrt();
  return sx.asDiagonal() * left * singulars.asDiagonal() * right.transpose() * sy.asDiagonal();
}

PicDecomposition decompose(const JointDistribution& joint, ZeroMassPolicy policy) {
  if (!joint.has_full_support()) {
    if (policy == ZeroMassPolicy::Strict) {
      throw Error(ErrorCode::ZeroMarginal,
                  "decompose requires strictly positive marginals (use prune mode)");
    }
    return decompose(joint.pruned(), ZeroMassPolicy::Strict);
  }

  const Eigen::Index m = joint.rows();
  const Eigen::Index n = joint.cols();
  const Eigen::Index d = std::min(m, n) - 1;
  const Vector& px = joint.row_marginal();
  const Vector& py = joint.col_marginal();
  const Vector sx = px.cwiseSqrt();
  const Vector sy = py.cwiseSqrt();

  const Eigen::MatrixXd q = sx.cwiseInverse().asDiagonal() * joint.matrix() *
                            sy.cwiseInverse().asDiagonal();

  // (sqrt p_X, sqrt p_Y) is always a singular pair of q with value 1. Rotating
  // it onto e_0 on both sides leaves a block-diagonal matrix, and the SVD of
  // the trailing (m-1) x (n-1) block supplies sigma_1..sigma_d. This pins the
  // leading triple even when sigma_1 = 1.
  PicDecomposition out;
  out.d = d;
  out.p_x = px;
  out.p_y = py;
  out.left = Matrix::Zero(m, d + 1);
  out.right = Matrix::Zero(n, d + 1);
  out.singulars = Vector::Zero(d + 1);
  out.left.col(0) = sx;
  out.right.col(0) = sy;
  out.singulars(0) = 1.0;

  if (d > 0) {
    const Eigen::MatrixXd cx = detail::complement_basis(sx);
    const Eigen::MatrixXd cy = detail::complement_basis(sy);
    const Eigen::MatrixXd block = cx.transpose() * q * cy;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
      throw Error(ErrorCode::NumericalFailure, "SVD did not converge");
    }
    const Eigen::MatrixXd u = cx * svd.matrixU();
    const Eigen::MatrixXd v = cy * svd.matrixV();
    for (Eigen::Index k = 0; k < d; ++k) {
      double sigma = svd.singularValues()(k);
      if (!std::isfinite(sigma) || sigma > 1.0 + kSingularSlack) {
        std::ostringstream os;
        os << "singular value " << sigma << " outside [0, 1]";
        throw Error(ErrorCode::NumericalFailure, os.str());
      }
      sigma = std::clamp(sigma, 0.0, 1.0);
      if (sigma < kZeroSingular) sigma = 0.0;
      out.singulars(k + 1) = sigma;
      out.left.col(k + 1) = u.col(k);
      out.right.col(k + 1) = v.col(k);
    }
    for (Eigen::Index k = 1; k <= d; ++k) {
      for (Eigen::Index i = 0; i < m; ++i) {
        const double x = out.left(i, k);
        if (std::abs(x) > kSignTolerance) {
          if (x < 0.0) {
            out.left.col(k) *= -1.0;
            out.right.col(k) *= -1.0;
          }
          break;
        }
      }
    }
  }

  out.reconstruction_error = (out.reconstruct() - joint.matrix()).cwiseAbs().maxCoeff();
  return out;
}

JointDistribution compose_chain(const JointDistribution& joint_xy,
                                const ChannelMatrix& channel_yz) {
  if (joint_xy.cols() != channel_yz.rows()) {
    std::ostringstream os;
    os << "joint has " << joint_xy.cols() << " outputs but the channel has "
       << channel_yz.rows() << " inputs";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return JointDistribution::validate(joint_xy.matrix() * channel_yz.matrix());
}

Vector dpi_margin(const JointDistribution& joint_xy, const ChannelMatrix& channel_yz) {
  const JointDistribution joint_xz = compose_chain(joint_xy, channel_yz);
  const PicDecomposition xy = decompose(joint_xy);
  const PicDecomposition xz = decompose(joint_xz, ZeroMassPolicy::Prune);

  const Vector pic_xy = xy.inertia_components();
  const Vector pic_xz = xz.inertia_components();
  Vector margin(xy.d);
  double sum_xy = 0.0;
  double sum_xz = 0.0;
  for (Eigen::Index k = 0; k < xy.d; ++k) {
    sum_xy += pic_xy(k);
    if (k < pic_xz.size()) sum_xz += pic_xz(k);
    margin(k) = sum_xy - sum_xz;
  }
  return margin;
}

}  // namespace inertia
