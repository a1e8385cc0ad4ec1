#pragma once

#include "inertia/distribution.hpp"

#include <cstdint>
#include <vector>

namespace inertia {

// (epsilon, q)-SC: keeps the input with probability 1 - epsilon and moves to
// each of the other q - 1 symbols with probability epsilon / (q - 1).
// Requires q >= 2 and 0 <= epsilon <= 1 - 1/q (EpsilonOutOfRange otherwise).
ChannelMatrix synthesize_qsc(int q, double epsilon);

// Replaces every nonleading singular value of a conforming joint with uniform
// marginals on [q] by sigma_1, i.e. returns q^{-1} U diag(1, s1, ..., s1) U^T
// with U taken from decompose(joint). The result is the uniform-input joint
// of the (epsilon, q)-SC with epsilon = (q - 1)(1 - s1) / q.
// Throws NotConforming or NotUniform.
JointDistribution flatten_pics(const JointDistribution& joint, double tol = kDefaultTolerance);

// Crossover probability of the q-ary SC with maximal correlation rho.
double qsc_epsilon_for_correlation(int q, double rho);

// z = U Lambda 1 m^{-1/2} for a symmetric channel P_{Y|X} = U Lambda U^T.
// Entries sum to one but may be negative.
struct NoiseProxy {
  Vector values;
  Vector eigenvalues;  // Lambda, uniform eigenpair first
};

// The uniform eigenvector comes first. Inside each remaining eigenspace the
// basis is rotated so its column sum points along the projection of e_0;
// this makes z equal the first channel row for q-ary SCs and for additive
// binary channels. Throws NotSymmetricChannel.
NoiseProxy noise_proxy(const ChannelMatrix& channel, double tol = kDefaultTolerance);

// Binary additive-noise channel Y^n = X^n (+) Z^n on {-1,1}^n. noise is
// p_{Z^n} indexed by mask; coeffs[S] = E[chi_S(Z^n)] = 2^{n/2} (H noise)[S].
class AdditiveNoiseChannel {
 public:
  int block_length() const noexcept { return n_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  const Vector& noise() const noexcept { return noise_; }
  const Vector& coeffs() const noexcept { return coeffs_; }

  // p(y|x) = noise(x XOR y).
  ChannelMatrix channel() const;
  JointDistribution joint(const Vector& input) const;
  JointDistribution uniform_joint() const;

  // Multiset {c_S^2 : S != empty}, sorted descending; these are the PICs
  // of uniform_joint().
  Vector inertia_components() const;

 private:
  friend AdditiveNoiseChannel additive_from_noise(int n, const Vector& noise);
  AdditiveNoiseChannel(int n, Vector noise, Vector coeffs)
      : n_(n), noise_(std::move(noise)), coeffs_(std::move(coeffs)) {}

  int n_;
  Vector noise_;
  Vector coeffs_;
};

// Throws InvalidDistribution when noise is not a distribution over 2^n masks.
AdditiveNoiseChannel additive_from_noise(int n, const Vector& noise);

// Memoryless BSC(delta)^{(x)n}: i.i.d. flips with probability delta.
AdditiveNoiseChannel memoryless_bsc(int n, double delta);

// noise = 2^{-n/2} H coeffs. Requires coeffs[0] = 1 within 1e-9. Entries in
// [-1e-9, 0) are clamped to zero and the result renormalized; anything more
// negative means no additive channel has these parities (InvalidCoefficients).
Vector noise_from_coeffs(const Vector& coeffs);

struct ParityViolation {
  std::uint64_t subset;
  std::uint64_t point;
  double expectation;  // E[chi_S(Y) | X = point]
  double predicted;    // c_S chi_S(point)
};

struct ParityProbe {
  bool parity_changing = false;
  Vector coeffs;  // meaningful when parity_changing
  std::vector<ParityViolation> violations;
  // Whether noise_from_coeffs(coeffs) reproduces the channel as
  // p(y|x) = noise(x XOR y) within tol. Only evaluated when parity_changing.
  bool additive = false;
};

// Tests membership in the parity-changing class: for each S, the values
// E[chi_S(Y^n) | X^n = x] must equal c_S chi_S(x) for one c_S across all x.
// The channel must be 2^n x 2^n.
ParityProbe parity_coeffs_probe(const ChannelMatrix& channel, double tol = kDefaultTolerance);

}  // namespace inertia
