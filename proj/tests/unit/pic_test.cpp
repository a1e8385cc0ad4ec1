#include "inertia/channels.hpp"
#include "inertia/error.hpp"
#include "inertia/pic.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace inertia {
namespace {

void expect_invariants(const PicDecomposition& dec, const JointDistribution& j) {
  const Eigen::Index d = std::min(j.rows(), j.cols()) - 1;
  ASSERT_EQ(dec.d, d);
  ASSERT_EQ(dec.singulars.size(), d + 1);
  EXPECT_NEAR(dec.singulars(0), 1.0, 1e-9);
  for (Eigen::Index i = 1; i <= d; ++i) {
    EXPECT_LE(dec.singulars(i), dec.singulars(i - 1) + 1e-9);
    EXPECT_GE(dec.singulars(i), 0.0);
    EXPECT_LE(dec.singulars(i), 1.0);
  }
  EXPECT_LE((dec.reconstruct() - j.matrix()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE(dec.reconstruction_error, 1e-9);

  const Eigen::Index k = d + 1;
  EXPECT_LE((dec.left.transpose() * dec.left - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((dec.right.transpose() * dec.right - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(),
            1e-9);
  // Leading pair equals (sqrt p_X, sqrt p_Y) with a shared sign.
  const double sign = dec.left(0, 0) >= 0 ? 1.0 : -1.0;
  EXPECT_LE((sign * dec.left.col(0) - j.row_marginal().cwiseSqrt()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((sign * dec.right.col(0) - j.col_marginal().cwiseSqrt()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Decompose, ProductJointHasNoCorrelation) {
  oracle::Rng rng(1);
  const Vector px = oracle::random_probability(rng, 4);
  const Vector py = oracle::random_probability(rng, 3);
  const auto j = validate_joint(px * py.transpose());
  const auto dec = decompose(j);
  expect_invariants(dec, j);
  EXPECT_EQ(dec.maximal_correlation(), 0.0);
  EXPECT_EQ(dec.inertia_components().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Decompose, IdentityJointIsPerfectlyCorrelated) {
  const auto j = validate_joint(Matrix::Identity(4, 4) / 4.0);
  const auto dec = decompose(j);
  expect_invariants(dec, j);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(dec.singulars(i), 1.0, 1e-12);
}

TEST(Decompose, SymmetricTwoByTwo) {
  Matrix p(2, 2);
  p << 0.4, 0.1, 0.1, 0.4;
  const auto dec = decompose(validate_joint(p));
  EXPECT_NEAR(dec.maximal_correlation(), 0.6, 1e-12);
  EXPECT_NEAR(dec.inertia_components()(0), 0.36, 1e-12);
}

TEST(Decompose, SignConventionFirstEntryPositive) {
  oracle::Rng rng(2);
  const auto dec = decompose(validate_joint(oracle::random_joint(rng, 5, 4)));
  for (Eigen::Index c = 0; c < dec.left.cols(); ++c) {
    for (Eigen::Index r = 0; r < dec.left.rows(); ++r) {
      if (std::abs(dec.left(r, c)) > 1e-12) {
        EXPECT_GT(dec.left(r, c), 0.0);
        break;
      }
    }
  }
}

TEST(Decompose, MatchesGramEigenvaluesAndReconstructs) {
  oracle::Rng rng(20240);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = oracle::uniform_int(rng, 1, 8);
    const int n = oracle::uniform_int(rng, 1, 8);
    const auto j = validate_joint(oracle::random_joint(rng, m, n));
    const auto dec = decompose(j);
    expect_invariants(dec, j);
    const Vector expected = oracle::pics_by_gram(j.matrix());
    ASSERT_EQ(expected.size(), dec.d);
    if (dec.d > 0) {
      EXPECT_LE((dec.inertia_components() - expected).cwiseAbs().maxCoeff(), 1e-9)
          << m << "x" << n;
    }
  }
}

TEST(Decompose, ZeroMarginalStrictOrPruned) {
  Matrix p(3, 2);
  p << 0.5, 0.0, 0.0, 0.0, 0.0, 0.5;
  const auto j = validate_joint(p);
  EXPECT_THROW(decompose(j), Error);
  const auto dec = decompose(j, ZeroMassPolicy::Prune);
  EXPECT_EQ(dec.left.rows(), 2);
  EXPECT_NEAR(dec.maximal_correlation(), 1.0, 1e-12);
}

TEST(Decompose, ConformingHasMatchingFactorsAndChannelEigenvalues) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = oracle::uniform_int(rng, 2, 6);
    // W^2 / q for symmetric doubly stochastic W is conforming with uniform marginals.
    const Matrix w = oracle::random_symmetric_doubly_stochastic(rng, q);
    const auto j = validate_joint(w * w / q);
    ASSERT_TRUE(is_conforming(j));
    const auto dec = decompose(j);
    for (Eigen::Index c = 0; c <= dec.d; ++c) {
      if (dec.singulars(c) < 1e-9) continue;
      const double s = dec.left.col(c).dot(dec.right.col(c)) >= 0 ? 1.0 : -1.0;
      EXPECT_LE((dec.left.col(c) - s * dec.right.col(c)).cwiseAbs().maxCoeff(), 1e-9);
    }
    // sigma_i = |eigenvalues| of P_{Y|X} = q P.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(q * j.matrix()));
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < q; ++i) mags.push_back(std::abs(solver.eigenvalues()(i)));
    std::sort(mags.rbegin(), mags.rend());
    for (Eigen::Index i = 0; i < q; ++i) EXPECT_NEAR(dec.singulars(i), mags[i], 1e-9);
  }
}

TEST(ComposeChain, IdentityLeavesJointUnchanged) {
  oracle::Rng rng(6);
  const auto j = validate_joint(oracle::random_joint(rng, 3, 4));
  const auto out = compose_chain(j, ChannelMatrix::validate(Matrix::Identity(4, 4)));
  EXPECT_LE((out.matrix() - j.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ComposeChain, BscCascadeConvolvesCrossovers) {
  const double d1 = 0.1, d2 = 0.3;
  const auto j = validate_joint(oracle::qsc_joint(2, d1));
  const auto out = compose_chain(j, synthesize_qsc(2, d2));
  const Matrix expected = oracle::qsc_joint(2, d1 + d2 - 2 * d1 * d2);
  EXPECT_LE((out.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ComposeChain, ConstantChannelGivesProduct) {
  oracle::Rng rng(8);
  const auto j = validate_joint(oracle::random_joint(rng, 3, 3));
  Matrix w(3, 2);
  w << 0.3, 0.7, 0.3, 0.7, 0.3, 0.7;
  const auto out = compose_chain(j, ChannelMatrix::validate(w));
  EXPECT_LE(decompose(out).maximal_correlation(), 1e-7);
  EXPECT_THROW(compose_chain(j, ChannelMatrix::validate(Matrix::Identity(2, 2))), Error);
}

TEST(DpiMargin, KnownCases) {
  const auto j = validate_joint(oracle::qsc_joint(2, 0.25));
  EXPECT_NEAR(dpi_margin(j, ChannelMatrix::validate(Matrix::Identity(2, 2)))(0), 0.0, 1e-12);
  EXPECT_NEAR(dpi_margin(j, synthesize_qsc(2, 0.25))(0), 0.1875, 1e-12);

  oracle::Rng rng(9);
  const auto r = validate_joint(oracle::random_joint(rng, 4, 4));
  Matrix constant = Matrix::Zero(4, 3);
  constant.col(1).setOnes();
  const Vector margin = dpi_margin(r, ChannelMatrix::validate(constant));
  const Vector pics = decompose(r).inertia_components();
  double partial = 0.0;
  for (Eigen::Index k = 0; k < pics.size(); ++k) {
    partial += pics(k);
    EXPECT_NEAR(margin(k), partial, 1e-9);
  }
}

TEST(DpiMargin, NonnegativeOnRandomChains) {
  oracle::Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = oracle::uniform_int(rng, 2, 6);
    const int n = oracle::uniform_int(rng, 2, 6);
    const int k = oracle::uniform_int(rng, 1, 6);
    const Vector margin = dpi_margin(validate_joint(oracle::random_joint(rng, m, n)),
                                     ChannelMatrix::validate(oracle::random_channel(rng, n, k)));
    EXPECT_GE(margin.minCoeff(), -1e-9);
  }
}

// Spot check of convexity of the partial PIC sums in p_{Y|X} at fixed p_X.
TEST(DpiMargin, PartialSumsConvexInChannelSpotCheck) {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = oracle::uniform_int(rng, 2, 5);
    const int n = oracle::uniform_int(rng, 2, 5);
    const Vector px = oracle::random_probability(rng, m);
    const Matrix w0 = oracle::random_channel(rng, m, n);
    const Matrix w1 = oracle::random_channel(rng, m, n);
    const double t = oracle::uniform(rng);
    auto partial_sums = [&](const Matrix& w) {
      const Vector pics =
          decompose(joint_from_channel(ChannelMatrix::validate(w), px)).inertia_components();
      Vector sums(pics.size());
      double acc = 0.0;
      for (Eigen::Index k = 0; k < pics.size(); ++k) sums(k) = acc += pics(k);
      return sums;
    };
    const Vector mid = partial_sums(t * w0 + (1 - t) * w1);
    const Vector chord = t * partial_sums(w0) + (1 - t) * partial_sums(w1);
    EXPECT_LE((mid - chord).maxCoeff(), 1e-9);
  }
}

}  // namespace
}  // namespace inertia
