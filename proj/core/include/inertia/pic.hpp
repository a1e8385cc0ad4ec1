#pragma once

#include "inertia/distribution.hpp"

namespace inertia {

// Principal inertia decomposition D_X^{-1/2} P D_Y^{-1/2} = U Sigma V^T.
//
// Column 0 of `left`/`right` is sqrt(p_X)/sqrt(p_Y) with singular value 1;
// columns 1..d carry sigma_1 >= ... >= sigma_d, d = min(m,n) - 1. The
// principal inertia components are sigma_i^2 for i >= 1 and the maximal
// correlation is sigma_1 (zero when d = 0).
//
// Signs are normalized so that the first entry of each left vector with
// magnitude above 1e-12 is positive; the matching right vector is flipped
// with it. Within a block of equal singular values the basis is whatever the
// SVD routine produced.
struct PicDecomposition {
  Matrix left;
  Vector singulars;
  Matrix right;
  Eigen::Index d = 0;
  Vector p_x;
  Vector p_y;
  double reconstruction_error = 0.0;

  // sigma_1, or 0 when d = 0.
  double maximal_correlation() const noexcept;

  // sigma_i^2 for i = 1..d.
  Vector inertia_components() const;

  // D_X^{1/2} U Sigma V^T D_Y^{1/2}.
  Matrix reconstruct() const;
};

// Throws ZeroMarginal under Strict when some marginal entry is zero. Under
// Prune the decomposition refers to the pruned alphabets.
PicDecomposition decompose(const JointDistribution& joint,
                           ZeroMassPolicy policy = ZeroMassPolicy::Strict);

// Joint of (X,Z) for the Markov chain X -> Y -> Z.
JointDistribution compose_chain(const JointDistribution& joint_xy, const ChannelMatrix& channel_yz);

// Entry k-1 is sum_{i<=k} sigma_i^2(X;Y) - sum_{i<=k} sigma_i^2(X;Z) for
// k = 1..d, with d taken from (X,Y). PICs of (X,Z) past its own d count as
// zero; zero-mass outputs of Z are pruned before its decomposition.
Vector dpi_margin(const JointDistribution& joint_xy, const ChannelMatrix& channel_yz);

}  // namespace inertia
