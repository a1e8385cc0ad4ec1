#include "inertia/infomeasures.hpp"

#include "inertia/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace inertia {
namespace {

constexpr int kStoredOrders = 100;  // k = 2..101; (k-2)! stays finite

void require_unit_interval_open(double a, const char* what) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream os;
    os << what << " = " << a << " must lie in (0, 1)";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

double xlog2x(double t) { return t > 0.0 ? t * std::log2(t) : 0.0; }

}  // namespace

FDivergenceKernel::FDivergenceKernel(std::string name, Function f,
                                     std::vector<double> derivatives_at_one,
                                     double slope_at_infinity)
    : name_(std::move(name)),
      f_(std::move(f)),
      derivatives_(std::move(derivatives_at_one)),
      slope_at_infinity_(slope_at_infinity) {
  if (!f_ || f_(1.0) != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "kernel '" + name_ + "' must satisfy f(1) = 0");
  }
  // half-octave grid 2^-8 .. 2^4
  std::vector<double> grid;
  for (int i = 0; i <= 24; ++i) grid.push_back(std::exp2((i - 16) / 2.0));
  for (double s : grid) {
    for (double t : grid) {
      const double lhs = f_(0.5 * (s + t));
      const double rhs = 0.5 * (f_(s) + f_(t));
      if (lhs > rhs + 1e-12 * (1.0 + std::abs(rhs))) {
        throw Error(ErrorCode::InvalidArgument, "kernel '" + name_ + "' is not convex");
      }
    }
  }
}

double FDivergenceKernel::derivative_at_one(int k) const {
  if (k < 2 || static_cast<std::size_t>(k - 2) >= derivatives_.size()) {
    std::ostringstream os;
    os << "kernel '" << name_ << "' has no derivative of order " << k << " at 1";
    throw Error(ErrorCode::NoDerivatives, os.str());
  }
  return derivatives_[static_cast<std::size_t>(k - 2)];
}

FDivergenceKernel FDivergenceKernel::kl() {
  // f^{(k)}(1) = (-1)^k (k-2)! / ln 2
  std::vector<double> derivs;
  double factorial = 1.0;
  for (int k = 2; k < 2 + kStoredOrders; ++k) {
    if (k > 2) factorial *= (k - 2);
    derivs.push_back(((k % 2) == 0 ? 1.0 : -1.0) * factorial / std::numbers::ln2);
  }
  return FDivergenceKernel("kl", xlog2x, std::move(derivs));
}

FDivergenceKernel FDivergenceKernel::chi2() {
  std::vector<double> derivs(kStoredOrders, 0.0);
  derivs[0] = 2.0;
  return FDivergenceKernel(
      "chi2", [](double t) { return (t - 1.0) * (t - 1.0); }, std::move(derivs));
}

FDivergenceKernel FDivergenceKernel::tv() {
  return FDivergenceKernel(
      "tv", [](double t) { return 0.5 * std::abs(t - 1.0); }, {}, 0.5);
}

FDivergenceKernel FDivergenceKernel::by_name(const std::string& name) {
  if (name == "kl") return kl();
  if (name == "chi2") return chi2();
  if (name == "tv") return tv();
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + name + "' (kl | chi2 | tv)");
}

double f_divergence(const Vector& p, const Vector& q, const FDivergenceKernel& kernel) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "f_divergence needs equal-length vectors");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) > 0.0) {
      total += q(i) * kernel(p(i) / q(i));
    } else if (p(i) > 0.0) {
      if (!std::isfinite(kernel.slope_at_infinity())) {
        std::ostringstream os;
        os << "p[" << i << "] = " << p(i) << " > 0 where q vanishes (kernel '" << kernel.name()
           << "')";
        throw Error(ErrorCode::SupportViolation, os.str());
      }
      total += p(i) * kernel.slope_at_infinity();
    }
  }
  return total;
}

double f_information(const JointDistribution& joint, const FDivergenceKernel& kernel) {
  const Matrix product = joint.row_marginal() * joint.col_marginal().transpose();
  const Eigen::Index size = joint.rows() * joint.cols();
  const Vector p = Eigen::Map<const Vector>(joint.matrix().data(), size);
  const Vector q = Eigen::Map<const Vector>(product.data(), size);
  return f_divergence(p, q, kernel);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "binary entropy argument " << x << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double moment_series_coefficient(int k, double a) {
  return 1.0 / std::pow(a, k - 1) + ((k % 2) == 0 ? 1.0 : -1.0) / std::pow(1.0 - a, k - 1);
}

SeriesExpansion series_f_information(const BitFunctionVector& f, const JointDistribution& joint,
                                     const FDivergenceKernel& kernel, int max_order) {
  if (max_order < 2) {
    throw Error(ErrorCode::OutOfRange, "series needs at least order 2");
  }
  kernel.derivative_at_one(max_order);

  SeriesExpansion out;
  out.a = f.mean(joint.row_marginal());
  require_unit_interval_open(out.a, "a");
  const Vector g = posterior_of_bit(f, joint);
  const Vector& py = joint.col_marginal();
  const Vector centered = g.array() - out.a;

  const double spread = centered.cwiseAbs().maxCoeff();
  out.ratio = spread * std::max(1.0 / out.a, 1.0 / (1.0 - out.a));
  out.converges = out.ratio < 1.0;

  Vector power = centered.cwiseProduct(centered);
  double factorial = 2.0;
  double sum = 0.0;
  for (int k = 2; k <= max_order; ++k) {
    if (k > 2) {
      power = power.cwiseProduct(centered);
      factorial *= k;
    }
    const double moment = py.dot(power);
    const double coeff = kernel.derivative_at_one(k);
    if (coeff != 0.0) {
      sum += coeff * moment_series_coefficient(k, out.a) * moment / factorial;
    }
    out.partial_sums.push_back(sum);
  }
  return out;
}

double qsc_f_information(double a, double sigma1, const FDivergenceKernel& kernel) {
  require_unit_interval_open(a, "a");
  if (!(sigma1 >= 0.0 && sigma1 <= 1.0)) {
    std::ostringstream os;
    os << "sigma1 = " << sigma1 << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const double c = (1.0 - a) / a;
  return a * a * kernel(1.0 + sigma1 * c) + 2.0 * a * (1.0 - a) * kernel(1.0 - sigma1) +
         (1.0 - a) * (1.0 - a) * kernel(1.0 + sigma1 / c);
}

double qsc_mutual_information(double a, double delta) {
  require_unit_interval_open(a, "a");
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw Error(ErrorCode::OutOfRange, "delta must lie in [0, 1/2]");
  }
  return binary_entropy(a) - a * binary_entropy(2.0 * delta * (1.0 - a)) -
         (1.0 - a) * binary_entropy(2.0 * delta * a);
}

}  // namespace inertia
