#pragma once

// Bounds on z = Pr{B = B_hat = 0} for B -> X -> Y -> B_hat.
//
// With x_i = p_{B|X}(0|i) and y_j = p_{B_hat|Y}(0|j), z = x^T P y, and the
// feasible sets are C(a) = {x in [0,1]^m : p_X^T x = a} and
// C(b) = {y in [0,1]^n : p_Y^T y = b}. (||P^T x||_1 = p_X^T x because P is
// entrywise nonnegative.) The unbiased region H(a, P) further asks a = b and
// z >= a^2.

#include "inertia/distribution.hpp"
#include "inertia/infomeasures.hpp"

#include <cstdint>
#include <vector>

namespace inertia {

// a = 1 - E[B], b = 1 - E[B_hat], z = Pr{B = B_hat = 0}.
struct BitPairSummary {
  double a = 0.0;
  double b = 0.0;
  double z = 0.0;

  // [[z, a - z], [b - z, 1 - a - b + z]]; throws OutOfRange when an entry is
  // below -tol, i.e. z outside [max(0, a + b - 1), min(a, b)].
  JointDistribution joint(double tol = kDefaultTolerance) const;

  bool feasible(double tol = kDefaultTolerance) const noexcept;
};

// I_f(B; B_hat) of the summary's 2 x 2 joint.
double bit_pair_information(const BitPairSummary& pair, const FDivergenceKernel& kernel);

// Vertices of {x in [0,1]^m : p^T x = a}. Each vertex is 0/1 except for at
// most one coordinate. Ordered by (support mask, fractional index); integral
// vertices come with fractional index m. Zero-mass coordinates are only ever
// 0 or 1. Throws OutOfRange for a outside [0, 1] and TooLarge for m > 24.
std::vector<Vector> polytope_vertices(const Vector& p, double a);

// max (or min) of w^T y over {y in [0,1]^n : p^T y = b}: a fractional
// knapsack filled in order of w_j / p_j. Ties keep index order.
Vector knapsack_optimum(const Vector& w, const Vector& p, double b, bool maximize);

struct ZExtremesOptions {
  int exact_limit = 12;        // enumerate vertices when min(m, n) <= this
  int restarts = 32;           // alternating-ascent starts otherwise
  std::uint64_t seed = 0;
};

struct ZExtremes {
  double z_low = 0.0;
  double z_high = 0.0;
  Vector argmin_x, argmin_y;
  Vector argmax_x, argmax_y;
  bool exact = true;
};

// Extremes of x^T P y over C(a) x C(b). In exact mode every vertex of the
// smaller side is enumerated and the other side solved as a knapsack, which
// attains the optimum over vertex pairs. Ties keep the first vertex in
// polytope_vertices order. When both sides exceed exact_limit the result
// comes from seeded alternating ascent and exact is false.
ZExtremes z_extremes(const JointDistribution& joint, double a, double b,
                     const ZExtremesOptions& options = {});

// ab + rho sqrt(a(1-a)b(1-b)).
double z_upper_bound(double rho, double a, double b);

// Upper bound on I_f(B; B_hat) over H(a, P): the 2 x 2 f-information
// evaluated at z = a^2 + rho a (1-a), which is where it peaks on
// [a^2, a^2 + rho a(1-a)] for nonnegative convex I_f. Requires 0 < a < 1.
double fi_upper_unbiased(double a, double rho, const FDivergenceKernel& kernel);

// max(0, a + b - 2ab - 2 rho sqrt(a(1-a)b(1-b))).
double error_prob_lower(double a, double b, double rho);

// (1 - sqrt(1 - 4a(1-a)(1 - rho^2))) / 2, the minimum over b of
// error_prob_lower(a, b, rho).
double error_prob_lower_opt(double a, double rho);

}  // namespace inertia
