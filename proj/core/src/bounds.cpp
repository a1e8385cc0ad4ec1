#include "inertia/bounds.hpp"

#include "inertia/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace inertia {
namespace {

constexpr double kMassTolerance = 1e-12;
constexpr int kMaxEnumerated = 24;
constexpr int kMaxAscentSteps = 200;

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

struct Extremes {
  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  Vector low_x, low_y, high_x, high_y;

  void offer_high(double value, const Vector& x, const Vector& y) {
    if (value > high) {
      high = value;
      high_x = x;
      high_y = y;
    }
  }
  void offer_low(double value, const Vector& x, const Vector& y) {
    if (value < low) {
      low = value;
      low_x = x;
      low_y = y;
    }
  }
};

// Outer enumeration over vertices of C(a) for the rows of `p`, inner knapsack
// over C(b) for the columns.
Extremes enumerate_rows(const Matrix& p, const Vector& px, const Vector& py, double a, double b) {
  Extremes out;
  for (const Vector& x : polytope_vertices(px, a)) {
    const Vector w = p.transpose() * x;
    const Vector y_hi = knapsack_optimum(w, py, b, true);
    const Vector y_lo = knapsack_optimum(w, py, b, false);
    out.offer_high(w.dot(y_hi), x, y_hi);
    out.offer_low(w.dot(y_lo), x, y_lo);
  }
  return out;
}

Extremes alternating_ascent(const Matrix& p, const Vector& px, const Vector& py, double a,
                            double b, const ZExtremesOptions& options) {
  Extremes out;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (bool maximize : {true, false}) {
    const double sense = maximize ? 1.0 : -1.0;
    for (int r = 0; r < options.restarts; ++r) {
      std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
      Vector direction(px.size());
      for (Eigen::Index i = 0; i < direction.size(); ++i) direction(i) = unit(rng);
      Vector x = knapsack_optimum(direction, px, a, true);
      Vector y = knapsack_optimum(p.transpose() * x, py, b, maximize);
      double value = x.dot(p * y);
      for (int step = 0; step < kMaxAscentSteps; ++step) {
        const Vector x_next = knapsack_optimum(p * y, px, a, maximize);
        const Vector y_next = knapsack_optimum(p.transpose() * x_next, py, b, maximize);
        const double next = x_next.dot(p * y_next);
        if (sense * (next - value) <= 1e-15) break;
        x = x_next;
        y = y_next;
        value = next;
      }
      if (maximize) {
        out.offer_high(value, x, y);
      } else {
        out.offer_low(value, x, y);
      }
    }
  }
  return out;
}

}  // namespace

JointDistribution BitPairSummary::joint(double tol) const {
  if (!feasible(tol)) {
    std::ostringstream os;
    os << "z = " << z << " infeasible for a = " << a << ", b = " << b;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  Matrix m(2, 2);
  m << z, a - z, b - z, 1.0 - a - b + z;
  return JointDistribution::validate(m.cwiseMax(0.0));
}

bool BitPairSummary::feasible(double tol) const noexcept {
  return a >= -tol && a <= 1.0 + tol && b >= -tol && b <= 1.0 + tol && z >= -tol &&
         a - z >= -tol && b - z >= -tol && 1.0 - a - b + z >= -tol;
}

double bit_pair_information(const BitPairSummary& pair, const FDivergenceKernel& kernel) {
  return f_information(pair.joint(), kernel);
}

std::vector<Vector> polytope_vertices(const Vector& p, double a) {
  require_probability(a, "a");
  const Eigen::Index m = p.size();
  if (m < 1 || m > kMaxEnumerated) {
    std::ostringstream os;
    os << "vertex enumeration over " << m << " coordinates is not supported";
    throw Error(ErrorCode::TooLarge, os.str());
  }
  std::vector<Vector> vertices;
  const std::uint64_t masks = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    double mass = 0.0;
    Vector base = Vector::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) {
        mass += p(i);
        base(i) = 1.0;
      }
    }
    const double residual = a - mass;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (((mask >> j) & 1U) != 0 || p(j) <= 0.0) continue;
      if (residual > kMassTolerance && residual < p(j) - kMassTolerance) {
        Vector v = base;
        v(j) = residual / p(j);
        vertices.push_back(std::move(v));
      }
    }
    if (std::abs(residual) <= kMassTolerance) vertices.push_back(std::move(base));
  }
  return vertices;
}

Vector knapsack_optimum(const Vector& w, const Vector& p, double b, bool maximize) {
  if (w.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "knapsack weights and masses differ in length");
  }
  const Eigen::Index n = p.size();
  const double sense = maximize ? 1.0 : -1.0;
  Vector y = Vector::Zero(n);
  std::vector<Eigen::Index> order;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (p(j) > 0.0) {
      order.push_back(j);
    } else if (sense * w(j) > 0.0) {
      y(j) = 1.0;
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return sense * w(l) / p(l) > sense * w(r) / p(r);
  });
  double remaining = b;
  for (Eigen::Index j : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(1.0, remaining / p(j));
    y(j) = take;
    remaining -= take * p(j);
  }
  return y;
}

ZExtremes z_extremes(const JointDistribution& joint, double a, double b,
                     const ZExtremesOptions& options) {
  require_probability(a, "a");
  require_probability(b, "b");
  const Eigen::Index m = joint.rows();
  const Eigen::Index n = joint.cols();
  const auto limit = static_cast<Eigen::Index>(std::min(options.exact_limit, kMaxEnumerated));

  ZExtremes out;
  Extremes found;
  if (std::min(m, n) <= limit) {
    if (m <= n) {
      found = enumerate_rows(joint.matrix(), joint.row_marginal(), joint.col_marginal(), a, b);
    } else {
      const Matrix pt = joint.matrix().transpose();
      found = enumerate_rows(pt, joint.col_marginal(), joint.row_marginal(), b, a);
      std::swap(found.high_x, found.high_y);
      std::swap(found.low_x, found.low_y);
    }
    out.exact = true;
  } else {
    found = alternating_ascent(joint.matrix(), joint.row_marginal(), joint.col_marginal(), a, b,
                               options);
    out.exact = false;
  }
  out.z_low = found.low;
  out.z_high = found.high;
  out.argmin_x = std::move(found.low_x);
  out.argmin_y = std::move(found.low_y);
  out.argmax_x = std::move(found.high_x);
  out.argmax_y = std::move(found.high_y);
  return out;
}

double z_upper_bound(double rho, double a, double b) {
  require_probability(rho, "rho");
  require_probability(a, "a");
  require_probability(b, "b");
  return a * b + rho * std::sqrt(a * (1.0 - a) * b * (1.0 - b));
}

double fi_upper_unbiased(double a, double rho, const FDivergenceKernel& kernel) {
  require_probability(rho, "rho");
  if (!(a > 0.0 && a < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "fi_upper_unbiased needs 0 < a < 1");
  }
  const BitPairSummary peak{a, a, a * a + rho * a * (1.0 - a)};
  return bit_pair_information(peak, kernel);
}

double error_prob_lower(double a, double b, double rho) {
  require_probability(rho, "rho");
  require_probability(a, "a");
  require_probability(b, "b");
  const double value = a + b - 2.0 * a * b - 2.0 * rho * std::sqrt(a * (1.0 - a) * b * (1.0 - b));
  return std::max(0.0, value);
}

double error_prob_lower_opt(double a, double rho) {
  require_probability(rho, "rho");
  require_probability(a, "a");
  const double inner = 1.0 - 4.0 * a * (1.0 - a) * (1.0 - rho * rho);
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, inner)));
}

}  // namespace inertia
