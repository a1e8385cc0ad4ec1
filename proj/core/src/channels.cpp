#include "inertia/channels.hpp"

#include "inertia/error.hpp"
#include "inertia/hadamard.hpp"
#include "inertia/pic.hpp"
#include "linalg_detail.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace inertia {
namespace {

constexpr int kMaxBlockLength = 16;

Vector scaled(const Vector& v, double s) { return v * s; }

double sqrt_size(std::size_t size) { return std::sqrt(static_cast<double>(size)); }

}  // namespace

ChannelMatrix synthesize_qsc(int q, double epsilon) {
  if (q < 2) {
    throw Error(ErrorCode::OutOfRange, "q-ary symmetric channel needs q >= 2");
  }
  const double max_eps = 1.0 - 1.0 / q;
  if (!(epsilon >= 0.0 && epsilon <= max_eps + kStructuralTolerance)) {
    std::ostringstream os;
    os << "crossover " << epsilon << " outside [0, " << max_eps << "]";
    throw Error(ErrorCode::EpsilonOutOfRange, os.str());
  }
  epsilon = std::min(epsilon, max_eps);
  Matrix m = Matrix::Constant(q, q, epsilon / (q - 1));
  m.diagonal().setConstant(1.0 - epsilon);
  return ChannelMatrix::validate(m);
}

double qsc_epsilon_for_correlation(int q, double rho) {
  return static_cast<double>(q - 1) * (1.0 - rho) / q;
}

JointDistribution flatten_pics(const JointDistribution& joint, double tol) {
  if (!is_conforming(joint, tol)) {
    throw Error(ErrorCode::NotConforming, "flatten_pics requires a conforming joint");
  }
  if (!is_uniform(joint.row_marginal(), tol) || !is_uniform(joint.col_marginal(), tol)) {
    throw Error(ErrorCode::NotUniform, "flatten_pics requires uniform marginals");
  }
  const PicDecomposition dec = decompose(joint);
  const auto q = static_cast<double>(joint.rows());
  Vector flat = Vector::Constant(dec.d + 1, dec.maximal_correlation());
  flat(0) = 1.0;
  const Matrix result = dec.left * flat.asDiagonal() * dec.left.transpose() / q;
  return JointDistribution::validate(result);
}

NoiseProxy noise_proxy(const ChannelMatrix& channel, double tol) {
  if (!channel.is_symmetric(tol)) {
    throw Error(ErrorCode::NotSymmetricChannel, "noise_proxy requires P_{Y|X} = P_{Y|X}^T");
  }
  const Eigen::Index m = channel.rows();
  const Eigen::MatrixXd w = 0.5 * (channel.matrix() + channel.matrix().transpose());
  const Vector uniform = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));

  NoiseProxy out;
  out.eigenvalues = Vector::Zero(m);
  out.eigenvalues(0) = 1.0;
  Vector z = uniform;  // lambda_0 u_0
  if (m > 1) {
    // A symmetric stochastic matrix is doubly stochastic, so the uniform
    // vector is an eigenvector and its complement is invariant.
    const Eigen::MatrixXd c = detail::complement_basis(uniform);
    const Eigen::MatrixXd block = c.transpose() * w * c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::NumericalFailure, "eigendecomposition did not converge");
    }
    const Eigen::MatrixXd basis = c * solver.eigenvectors();
    const Vector& values = solver.eigenvalues();  // ascending
    Eigen::Index hi = m - 2;
    Eigen::Index slot = 1;
    while (hi >= 0) {
      Eigen::Index lo = hi;
      while (lo > 0 && std::abs(values(lo - 1) - values(hi)) <= tol) --lo;
      const Eigen::Index r = hi - lo + 1;
      const Eigen::MatrixXd space = basis.middleCols(lo, r);
      const double lambda = values.segment(lo, r).mean();
      const Vector along = space.row(0).transpose();
      Vector column_sum;
      if (along.norm() > kStructuralTolerance) {
        column_sum = std::sqrt(static_cast<double>(r)) * (space * along) / along.norm();
      } else {
        column_sum = Vector::Zero(m);
        for (Eigen::Index k = 0; k < r; ++k) {
          Vector col = space.col(k);
          for (Eigen::Index i = 0; i < m; ++i) {
            if (std::abs(col(i)) > kStructuralTolerance) {
              if (col(i) < 0.0) col = -col;
              break;
            }
          }
          column_sum += col;
        }
      }
      z += lambda * column_sum;
      out.eigenvalues.segment(slot, r).setConstant(lambda);
      slot += r;
      hi = lo - 1;
    }
  }
  out.values = z / std::sqrt(static_cast<double>(m));
  return out;
}

ChannelMatrix AdditiveNoiseChannel::channel() const {
  const std::size_t size = this->size();
  Matrix m(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          noise_(static_cast<Eigen::Index>(x ^ y));
    }
  }
  return ChannelMatrix::validate(m);
}

JointDistribution AdditiveNoiseChannel::joint(const Vector& input) const {
  return joint_from_channel(channel(), input);
}

JointDistribution AdditiveNoiseChannel::uniform_joint() const {
  return joint(uniform_distribution(static_cast<Eigen::Index>(size())));
}

Vector AdditiveNoiseChannel::inertia_components() const {
  Vector pics = coeffs_.tail(coeffs_.size() - 1).array().square();
  std::sort(pics.data(), pics.data() + pics.size(), std::greater<>());
  return pics;
}

AdditiveNoiseChannel additive_from_noise(int n, const Vector& noise) {
  if (n < 1 || n > kMaxBlockLength) {
    std::ostringstream os;
    os << "block length " << n << " outside [1, " << kMaxBlockLength << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const auto size = std::size_t{1} << n;
  if (static_cast<std::size_t>(noise.size()) != size) {
    std::ostringstream os;
    os << "noise has " << noise.size() << " entries, expected 2^" << n << " = " << size;
    throw Error(ErrorCode::InvalidDistribution, os.str());
  }
  Vector p = validate_probability_vector(noise);
  Vector coeffs = scaled(wht(p), sqrt_size(size));
  coeffs(0) = 1.0;
  return AdditiveNoiseChannel(n, std::move(p), std::move(coeffs));
}

AdditiveNoiseChannel memoryless_bsc(int n, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "crossover probability must lie in [0, 1]");
  }
  if (n < 1 || n > kMaxBlockLength) {
    throw Error(ErrorCode::OutOfRange, "block length outside [1, 16]");
  }
  const auto size = std::size_t{1} << n;
  Vector noise(static_cast<Eigen::Index>(size));
  for (std::size_t z = 0; z < size; ++z) {
    const int flips = std::popcount(z);
    noise(static_cast<Eigen::Index>(z)) = std::pow(delta, flips) * std::pow(1.0 - delta, n - flips);
  }
  return additive_from_noise(n, noise);
}

Vector noise_from_coeffs(const Vector& coeffs) {
  const auto size = static_cast<std::size_t>(coeffs.size());
  block_length_of(size);
  if (std::abs(coeffs(0) - 1.0) > kDefaultTolerance) {
    std::ostringstream os;
    os << "coeffs[empty set] = " << coeffs(0) << ", expected 1";
    throw Error(ErrorCode::InvalidCoefficients, os.str());
  }
  Vector noise = scaled(wht(coeffs), 1.0 / sqrt_size(size));
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    if (noise(i) < -kDefaultTolerance) {
      std::ostringstream os;
      os << "coefficients give negative noise mass " << noise(i) << " at mask " << i;
      throw Error(ErrorCode::InvalidCoefficients, os.str());
    }
    if (noise(i) < 0.0) noise(i) = 0.0;
  }
  return noise / noise.sum();
}

ParityProbe parity_coeffs_probe(const ChannelMatrix& channel, double tol) {
  if (channel.rows() != channel.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "parity probe needs a square channel");
  }
  const auto size = static_cast<std::size_t>(channel.rows());
  block_length_of(size);
  const auto isize = static_cast<Eigen::Index>(size);

  // expectations(x, S) = E[chi_S(Y) | X = x] = 2^{n/2} (H row_x)[S]
  Matrix expectations(isize, isize);
  for (Eigen::Index x = 0; x < isize; ++x) {
    Vector row = channel.matrix().row(x).transpose();
    expectations.row(x) = scaled(wht(row), sqrt_size(size)).transpose();
  }

  ParityProbe probe;
  probe.coeffs = Vector::Zero(isize);
  for (std::size_t s = 0; s < size; ++s) {
    const auto col = static_cast<Eigen::Index>(s);
    double c = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
      c += expectations(static_cast<Eigen::Index>(x), col) * parity_sign(s, x);
    }
    c /= static_cast<double>(size);
    probe.coeffs(col) = c;
    for (std::size_t x = 0; x < size; ++x) {
      const double e = expectations(static_cast<Eigen::Index>(x), col);
      const double predicted = c * parity_sign(s, x);
      if (std::abs(e - predicted) > tol) {
        probe.violations.push_back({s, x, e, predicted});
      }
    }
  }
  probe.parity_changing = probe.violations.empty();
  if (probe.parity_changing) {
    try {
      const Vector noise = noise_from_coeffs(probe.coeffs);
      double worst = 0.0;
      for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) {
          worst = std::max(worst, std::abs(channel.matrix()(static_cast<Eigen::Index>(x),
                                                            static_cast<Eigen::Index>(y)) -
                                           noise(static_cast<Eigen::Index>(x ^ y))));
        }
      }
      probe.additive = worst <= tol;
    } catch (const Error&) {
      probe.additive = false;
    }
  }
  return probe;
}

}  // namespace inertia
