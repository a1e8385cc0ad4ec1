#pragma once

#include "inertia/distribution.hpp"
#include "inertia/onebit.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace inertia {

// Convex f with f(1) = 0 defining D_f(p||q) = sum_i q_i f(p_i / q_i).
//
// derivatives_at_one()[k - 2] holds f^{(k)}(1) for k = 2, 3, ...; it is empty
// for kernels that are not smooth at 1. slope_at_infinity is lim f(t)/t as
// t -> infinity and decides the q_i = 0 < p_i term (p_i * slope); an infinite
// slope makes such terms a SupportViolation.
//
// Kernels used for f-information bounds on estimators should also make I_f
// nonnegative. The built-ins do; user kernels are not checked for it.
class FDivergenceKernel {
 public:
  using Function = std::function<double(double)>;

  // Throws InvalidArgument unless f(1) == 0 and midpoint convexity holds on a
  // half-octave grid on [2^-8, 16].
  FDivergenceKernel(std::string name, Function f, std::vector<double> derivatives_at_one,
                    double slope_at_infinity = std::numeric_limits<double>::infinity());

  double operator()(double t) const { return f_(t); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& derivatives_at_one() const noexcept { return derivatives_; }
  double slope_at_infinity() const noexcept { return slope_at_infinity_; }

  // f^{(k)}(1) for k >= 2; throws NoDerivatives past the stored range.
  double derivative_at_one(int k) const;

  static FDivergenceKernel kl();    // t log2 t, so I_f is mutual information in bits
  static FDivergenceKernel chi2();  // (t - 1)^2
  static FDivergenceKernel tv();    // |t - 1| / 2

  // "kl" | "chi2" | "tv"; throws InvalidArgument otherwise.
  static FDivergenceKernel by_name(const std::string& name);

 private:
  std::string name_;
  Function f_;
  std::vector<double> derivatives_;
  double slope_at_infinity_;
};

// sum_i q_i f(p_i / q_i) with 0 f(0/0) = 0. Throws DimensionMismatch, or
// SupportViolation when q_i = 0 < p_i and the kernel's slope is infinite.
double f_divergence(const Vector& p, const Vector& q, const FDivergenceKernel& kernel);

// D_f(P || p_X p_Y^T). With kl this is I(X;Y) in bits.
double f_information(const JointDistribution& joint, const FDivergenceKernel& kernel);

// Binary entropy in bits, H_b(0) = H_b(1) = 0. Throws OutOfRange off [0, 1].
double binary_entropy(double x);

// c_k(a) = 1/a^{k-1} + (-1)^k / (1 - a)^{k-1}.
double moment_series_coefficient(int k, double a);

struct SeriesExpansion {
  double a = 0.0;
  // partial_sums[i] = sum_{k=2}^{i+2} f^{(k)}(1) c_k(a) E[(g_Y - a)^k] / k!
  std::vector<double> partial_sums;
  // max_j max(|g_j - a|/a, |g_j - a|/(1 - a)) < 1; when false the partial sums
  // are still returned but need not converge.
  bool converges = false;
  double ratio = 0.0;
};

// Moment expansion of I_f(B;Y) for B with p_{B|X}(0|.) = f, for k = 2..K.
// Requires 0 < a < 1 (OutOfRange) and derivatives up to K (NoDerivatives).
SeriesExpansion series_f_information(const BitFunctionVector& f, const JointDistribution& joint,
                                     const FDivergenceKernel& kernel, int max_order);

// I_f(B;Y~) for a deterministic B with P(B = 0) = a observed through a q-ary
// SC with maximal correlation sigma1:
//   a^2 f(1 + sigma1 c) + 2a(1-a) f(1 - sigma1) + (1-a)^2 f(1 + sigma1 / c),
// c = (1-a)/a. Requires 0 < a < 1 and 0 <= sigma1 <= 1 (OutOfRange).
double qsc_f_information(double a, double sigma1, const FDivergenceKernel& kernel);

// H_b(a) - a H_b(2 delta (1-a)) - (1-a) H_b(2 delta a): the kl case of
// qsc_f_information with sigma1 = 1 - 2 delta.
double qsc_mutual_information(double a, double delta);

}  // namespace inertia
