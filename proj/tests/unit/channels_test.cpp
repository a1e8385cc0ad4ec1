#include "inertia/channels.hpp"
#include "inertia/error.hpp"
#include "inertia/hadamard.hpp"
#include "inertia/pic.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <functional>

namespace inertia {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception thrown";
  return ErrorCode::InvalidArgument;
}

Vector random_noise(oracle::Rng& rng, int n) { return oracle::random_probability(rng, 1 << n, 0.0); }

// ---- Walsh-Hadamard ------------------------------------------------------

TEST(Wht, KnownValues) {
  EXPECT_LE(max_abs(wht(vec({1, 0})) - Vector::Constant(2, 1 / std::sqrt(2.0))), 1e-15);
  EXPECT_EQ(max_abs(wht(Vector::Zero(8))), 0.0);
  EXPECT_LE(max_abs(wht(vec({1, 0, 0, 0})) - Vector::Constant(4, 0.5)), 1e-15);
  EXPECT_EQ(code_of([] { wht(Vector::Zero(3)); }), ErrorCode::NotPowerOfTwo);
}

TEST(Wht, MatchesDenseHadamardAndIsInvolution) {
  oracle::Rng rng(1);
  for (int n = 0; n <= 10; ++n) {
    const Matrix h = oracle::dense_hadamard(n);
    EXPECT_LE(max_abs(h * h - Matrix::Identity(h.rows(), h.cols())), 1e-12);
    for (int trial = 0; trial < 5; ++trial) {
      Vector v(1 << n);
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = oracle::uniform(rng, -1, 1);
      EXPECT_LE(max_abs(wht(v) - h * v), 1e-12);
      EXPECT_LE(max_abs(wht(wht(v)) - v), 1e-12);
    }
  }
}

TEST(Hadamard, ParitySignAndBlockLength) {
  EXPECT_EQ(parity_sign(0b11, 0b01), -1);
  EXPECT_EQ(parity_sign(0b11, 0b11), 1);
  EXPECT_EQ(parity_sign(0, 0b111), 1);
  EXPECT_EQ(block_length_of(1), 0);
  EXPECT_EQ(block_length_of(16), 4);
  EXPECT_THROW(block_length_of(12), Error);
}

// ---- q-ary symmetric channels -------------------------------------------

TEST(SynthesizeQsc, KnownValues) {
  Matrix bsc(2, 2);
  bsc << 0.75, 0.25, 0.25, 0.75;
  EXPECT_LE(max_abs(synthesize_qsc(2, 0.25).matrix() - bsc), 1e-15);
  EXPECT_EQ(max_abs(synthesize_qsc(4, 0.0).matrix() - Matrix::Identity(4, 4)), 0.0);
  EXPECT_LE(max_abs(synthesize_qsc(4, 0.75).matrix() - Matrix::Constant(4, 4, 0.25)), 1e-15);
  EXPECT_EQ(code_of([] { synthesize_qsc(4, 0.8); }), ErrorCode::EpsilonOutOfRange);
  EXPECT_EQ(code_of([] { synthesize_qsc(3, -0.1); }), ErrorCode::EpsilonOutOfRange);
}

TEST(FlattenPics, KnownValues) {
  Matrix half(2, 2);
  half << 0.375, 0.125, 0.125, 0.375;
  EXPECT_LE(max_abs(flatten_pics(validate_joint(half)).matrix() - half), 1e-12);

  const Matrix sc = oracle::qsc_joint(5, 0.3);
  EXPECT_LE(max_abs(flatten_pics(validate_joint(sc)).matrix() - sc), 1e-12);

  const auto flat = flatten_pics(validate_joint(Matrix::Constant(3, 3, 1.0 / 9)));
  EXPECT_LE(max_abs(flat.matrix() - Matrix::Constant(3, 3, 1.0 / 9)), 1e-12);
}

TEST(FlattenPics, Errors) {
  Matrix indefinite(2, 2);
  indefinite << 0.0, 0.5, 0.5, 0.0;
  EXPECT_EQ(code_of([&] { flatten_pics(validate_joint(indefinite)); }), ErrorCode::NotConforming);
  Matrix skewed(2, 2);
  skewed << 0.6, 0.1, 0.1, 0.2;
  EXPECT_EQ(code_of([&] { flatten_pics(validate_joint(skewed)); }), ErrorCode::NotUniform);
}

TEST(FlattenPics, EqualizesSpectrumAndMatchesClosedForm) {
  oracle::Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = oracle::uniform_int(rng, 2, 7);
    const Matrix w = oracle::random_symmetric_doubly_stochastic(rng, q);
    const auto joint = validate_joint(w * w / q);
    const auto flat = flatten_pics(joint);
    const double s1 = decompose(joint).maximal_correlation();
    const auto dec = decompose(flat);
    for (Eigen::Index i = 1; i <= dec.d; ++i) EXPECT_NEAR(dec.singulars(i), s1, 1e-9);
    // diagonal (1 + (q-1) s1) / q^2, off-diagonal (1 - s1) / q^2
    const double eps = (q - 1) * (1 - s1) / q;
    EXPECT_NEAR(qsc_epsilon_for_correlation(q, s1), eps, 1e-15);
    EXPECT_LE(max_abs(flat.matrix() - oracle::qsc_joint(q, eps)), 1e-9);
    Matrix closed = Matrix::Constant(q, q, (1 - s1) / (q * q));
    closed.diagonal().setConstant((1 + (q - 1) * s1) / (q * q));
    EXPECT_LE(max_abs(flat.matrix() - closed), 1e-9);
  }
}

// Flattening need not produce a channel that Y is degraded from. The helper
// searches for a joint where some one-bit function of X carries more
// information about Y than about Y~.
TEST(FlattenPics, NotAlwaysMoreInformative) {
  oracle::Rng rng(3);
  bool found = false;
  for (int trial = 0; trial < 400 && !found; ++trial) {
    const int q = 4;
    const Matrix w = oracle::random_symmetric_doubly_stochastic(rng, q);
    const Matrix p = w * w / q;
    const Matrix flat = flatten_pics(validate_joint(p)).matrix();
    for (std::uint64_t table = 1; table + 1 < (1U << q) && !found; ++table) {
      found = oracle::bit_mutual_information(p, table) >
              oracle::bit_mutual_information(flat, table) + 1e-6;
    }
  }
  EXPECT_TRUE(found);
}

// ---- noise proxy ---------------------------------------------------------

TEST(NoiseProxy, KnownValues) {
  const auto bsc = noise_proxy(synthesize_qsc(2, 0.2));
  EXPECT_LE(max_abs(bsc.values - vec({0.8, 0.2})), 1e-12);

  Vector e0 = Vector::Zero(5);
  e0(0) = 1.0;
  EXPECT_LE(max_abs(noise_proxy(ChannelMatrix::validate(Matrix::Identity(5, 5))).values - e0),
            1e-12);

  const double eps = 0.3;
  const auto sc = noise_proxy(synthesize_qsc(4, eps));
  EXPECT_NEAR(sc.values(0), 1 - eps, 1e-12);
  for (Eigen::Index i = 1; i < 4; ++i) EXPECT_NEAR(sc.values(i), eps / 3, 1e-12);
  EXPECT_NEAR(sc.eigenvalues(0), 1.0, 1e-12);
  for (Eigen::Index i = 1; i < 4; ++i) EXPECT_NEAR(sc.eigenvalues(i), 1 - eps * 4 / 3, 1e-12);
}

TEST(NoiseProxy, SumsToOneAndRejectsAsymmetric) {
  oracle::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = oracle::uniform_int(rng, 2, 7);
    const auto z = noise_proxy(ChannelMatrix::validate(oracle::random_symmetric_doubly_stochastic(rng, q)));
    EXPECT_NEAR(z.values.sum(), 1.0, 1e-9);
  }
  Matrix w(2, 2);
  w << 0.9, 0.1, 0.3, 0.7;
  EXPECT_EQ(code_of([&] { noise_proxy(ChannelMatrix::validate(w)); }),
            ErrorCode::NotSymmetricChannel);
}

TEST(NoiseProxy, AdditiveChannelRecoversFirstRow) {
  oracle::Rng rng(5);
  for (int n = 1; n <= 3; ++n) {
    const auto channel = additive_from_noise(n, random_noise(rng, n));
    EXPECT_LE(max_abs(noise_proxy(channel.channel()).values - channel.noise()), 1e-9);
  }
}

// ---- additive-noise channels ---------------------------------------------

TEST(AdditiveFromNoise, KnownValues) {
  Vector point = Vector::Zero(8);
  point(0) = 1.0;
  EXPECT_LE(max_abs(additive_from_noise(3, point).coeffs() - Vector::Ones(8)), 1e-12);
  EXPECT_LE(max_abs(additive_from_noise(1, vec({0.75, 0.25})).coeffs() - vec({1, 0.5})), 1e-12);
  EXPECT_LE(max_abs(memoryless_bsc(2, 0.25).coeffs() - vec({1, 0.5, 0.5, 0.25})), 1e-12);
  EXPECT_EQ(code_of([] { additive_from_noise(2, vec({0.5, 0.5, 0.5, -0.5})); }),
            ErrorCode::InvalidDistribution);
  EXPECT_EQ(code_of([] { additive_from_noise(2, vec({0.5, 0.5})); }),
            ErrorCode::InvalidDistribution);
}

TEST(AdditiveFromNoise, CoefficientsAreParityExpectations) {
  oracle::Rng rng(6);
  for (int n = 1; n <= 5; ++n) {
    const Vector noise = random_noise(rng, n);
    const auto channel = additive_from_noise(n, noise);
    for (std::uint64_t s = 0; s < (1U << n); ++s) {
      double expectation = 0.0;
      for (std::uint64_t z = 0; z < (1U << n); ++z) {
        expectation += noise(static_cast<Eigen::Index>(z)) *
                       (std::popcount(s & z) % 2 == 0 ? 1.0 : -1.0);
      }
      EXPECT_NEAR(channel.coeffs()(static_cast<Eigen::Index>(s)), expectation, 1e-12);
      EXPECT_LE(std::abs(channel.coeffs()(static_cast<Eigen::Index>(s))), 1.0 + 1e-12);
    }
  }
}

TEST(AdditiveFromNoise, ChannelIsXorCirculantAndJointFactors) {
  oracle::Rng rng(7);
  const int n = 3;
  const auto channel = additive_from_noise(n, random_noise(rng, n));
  const Matrix w = channel.channel().matrix();
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) EXPECT_EQ(w(x, y), channel.noise()(x ^ y));
  }
  const Vector input = oracle::random_probability(rng, 8);
  const Matrix h = oracle::dense_hadamard(n);
  const Matrix expected = input.asDiagonal() * h * channel.coeffs().asDiagonal() * h;
  EXPECT_LE(max_abs(channel.joint(input).matrix() - expected), 1e-12);
}

TEST(AdditiveFromNoise, UniformInputPicsAreSquaredCoefficients) {
  oracle::Rng rng(8);
  for (int n = 1; n <= 4; ++n) {
    const auto channel = additive_from_noise(n, random_noise(rng, n));
    const Vector pics = decompose(channel.uniform_joint()).inertia_components();
    EXPECT_LE(max_abs(pics - channel.inertia_components()), 1e-9);
    EXPECT_LE(max_abs(pics - oracle::pics_by_gram(channel.uniform_joint().matrix())), 1e-9);
  }
}

TEST(NoiseFromCoeffs, KnownValues) {
  Vector point = Vector::Zero(4);
  point(0) = 1.0;
  EXPECT_LE(max_abs(noise_from_coeffs(Vector::Ones(4)) - point), 1e-15);
  EXPECT_LE(max_abs(noise_from_coeffs(vec({1, 0.5, 0.5, 0.25})) - vec({0.5625, 0.1875, 0.1875, 0.0625})),
            1e-15);
  EXPECT_EQ(code_of([] { noise_from_coeffs(vec({1, 1, 1, -1})); }), ErrorCode::InvalidCoefficients);
  EXPECT_EQ(code_of([] { noise_from_coeffs(vec({0.9, 0.5, 0.5, 0.25})); }),
            ErrorCode::InvalidCoefficients);
}

TEST(NoiseFromCoeffs, RoundTrips) {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = oracle::uniform_int(rng, 1, 6);
    const Vector noise = random_noise(rng, n);
    const auto channel = additive_from_noise(n, noise);
    const Vector back = noise_from_coeffs(channel.coeffs());
    EXPECT_LE(max_abs(back - noise), 1e-12);
    EXPECT_LE(max_abs(additive_from_noise(n, back).coeffs() - channel.coeffs()), 1e-12);
  }
}

TEST(ParityProbe, AdditiveChannelsSucceed) {
  oracle::Rng rng(10);
  for (int n = 1; n <= 4; ++n) {
    const auto channel = additive_from_noise(n, random_noise(rng, n));
    const auto probe = parity_coeffs_probe(channel.channel());
    EXPECT_TRUE(probe.parity_changing);
    EXPECT_TRUE(probe.additive);
    EXPECT_TRUE(probe.violations.empty());
    EXPECT_LE(max_abs(probe.coeffs - channel.coeffs()), 1e-9);
  }
  const auto identity = parity_coeffs_probe(ChannelMatrix::validate(Matrix::Identity(8, 8)));
  EXPECT_TRUE(identity.parity_changing);
  EXPECT_LE(max_abs(identity.coeffs - Vector::Ones(8)), 1e-12);
}

TEST(ParityProbe, ConstantOutputFails) {
  Matrix w = Matrix::Zero(4, 4);
  w.col(0).setOnes();  // every input goes to the all-(+1) output
  const auto probe = parity_coeffs_probe(ChannelMatrix::validate(w));
  EXPECT_FALSE(probe.parity_changing);
  EXPECT_FALSE(probe.additive);
  EXPECT_FALSE(probe.violations.empty());
}

TEST(ParityProbe, RandomChannelIsNotParityChanging) {
  oracle::Rng rng(11);
  const auto probe = parity_coeffs_probe(ChannelMatrix::validate(oracle::random_channel(rng, 4, 4)));
  EXPECT_FALSE(probe.parity_changing);
}

}  // namespace
}  // namespace inertia
