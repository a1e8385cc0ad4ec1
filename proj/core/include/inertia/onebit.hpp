#pragma once

#include "inertia/distribution.hpp"
#include "inertia/pic.hpp"

#include <string>
#include <string_view>

namespace inertia {

// f_i = p_{B|X}(0|i). B = 0 is the tracked event, so a = sum_i f_i p_X(i)
// and E[B] = 1 - a.
class BitFunctionVector {
 public:
  // Entries must lie in [0, 1] (within 1e-12); throws OutOfRange.
  static BitFunctionVector from_values(const Vector& values);

  // Deterministic f from a hex truth table over `size` points: bit i of the
  // number (least significant hex digit last) is f_i. Leading digits may be
  // omitted; bits at or above `size` must be zero. Accepts an optional 0x.
  static BitFunctionVector from_hex(std::string_view hex, Eigen::Index size);

  const Vector& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  bool is_deterministic() const noexcept;

  // sum_i f_i p(i).
  double mean(const Vector& p) const;

 private:
  explicit BitFunctionVector(Vector values) : values_(std::move(values)) {}

  Vector values_;
};

// Lower-case hex of a 0/1 vector, bit i = entry i; inverse of from_hex.
std::string truth_table_hex(const Vector& bits);

// Q = [f, 1 - f]^T P, the 2 x n joint of (B, Y).
JointDistribution bit_joint(const BitFunctionVector& f, const JointDistribution& joint);

// g = D_Y^{-1} P^T f, g_j = p_{B|Y}(0|j). Throws ZeroMarginal.
Vector posterior_of_bit(const BitFunctionVector& f, const JointDistribution& joint);

struct FilterTrace {
  Vector transformed;  // f_hat = U^T D^{1/2} f
  Vector filtered;     // g_hat = Sigma f_hat
  Vector posterior;    // g = D^{-1/2} U g_hat
};

// Transform, filter and invert for a decomposition of a conforming joint.
// Throws NotConforming when the decomposition is not square with U = V on
// every nonzero singular value and equal marginals.
FilterTrace filter_pipeline(const BitFunctionVector& f, const PicDecomposition& dec);

// E[(g_Y - a)^2] = f^T D_X^{1/2} U Sigma^2 U^T D_X^{1/2} f - a^2, summed as
// sum_{i>=1} sigma_i^2 (u_i^T D_X^{1/2} f)^2 since the i = 0 term equals a^2.
// Throws InconsistentA when a differs from sum_i f_i p_X(i) by more than 1e-9.
double second_moment_via_pics(const BitFunctionVector& f, const PicDecomposition& dec, double a);

}  // namespace inertia
