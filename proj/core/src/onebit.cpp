#include "inertia/onebit.hpp"

#include "inertia/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace inertia {
namespace {

int hex_digit(char c) {
  const auto lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower >= '0' && lower <= '9') return lower - '0';
  if (lower >= 'a' && lower <= 'f') return 10 + (lower - 'a');
  return -1;
}

void require_size(const BitFunctionVector& f, Eigen::Index m) {
  if (f.size() != m) {
    std::ostringstream os;
    os << "bit function has " << f.size() << " entries but X has " << m << " symbols";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

BitFunctionVector BitFunctionVector::from_values(const Vector& values) {
  if (values.size() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "bit function vector is empty");
  }
  Vector v = values;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i)) || v(i) < -kStructuralTolerance ||
        v(i) > 1.0 + kStructuralTolerance) {
      std::ostringstream os;
      os << "f[" << i << "] = " << v(i) << " outside [0, 1]";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
    v(i) = std::clamp(v(i), 0.0, 1.0);
  }
  return BitFunctionVector(std::move(v));
}

BitFunctionVector BitFunctionVector::from_hex(std::string_view hex, Eigen::Index size) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) {
    throw Error(ErrorCode::InputParse, "empty hex truth table");
  }
  if (size < 1) {
    throw Error(ErrorCode::DimensionMismatch, "truth table size must be positive");
  }
  Vector v = Vector::Zero(size);
  const std::size_t digits = hex.size();
  for (std::size_t k = 0; k < digits; ++k) {
    const int value = hex_digit(hex[digits - 1 - k]);
    if (value < 0) {
      std::ostringstream os;
      os << "invalid hex digit '" << hex[digits - 1 - k] << "'";
      throw Error(ErrorCode::InputParse, os.str());
    }
    for (int b = 0; b < 4; ++b) {
      if (((value >> b) & 1) == 0) continue;
      const auto bit = static_cast<Eigen::Index>(4 * k + static_cast<std::size_t>(b));
      if (bit >= size) {
        std::ostringstream os;
        os << "truth table sets bit " << bit << " but only " << size << " points exist";
        throw Error(ErrorCode::DimensionMismatch, os.str());
      }
      v(bit) = 1.0;
    }
  }
  return BitFunctionVector(std::move(v));
}

bool BitFunctionVector::is_deterministic() const noexcept {
  return ((values_.array() == 0.0) || (values_.array() == 1.0)).all();
}

double BitFunctionVector::mean(const Vector& p) const { return values_.dot(p); }

std::string truth_table_hex(const Vector& bits) {
  const auto size = static_cast<std::size_t>(bits.size());
  const std::size_t digits = std::max<std::size_t>(1, (size + 3) / 4);
  std::string out(digits, '0');
  static constexpr char kDigits[] = "0123456789abcdef";
  for (std::size_t k = 0; k < digits; ++k) {
    int value = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + b;
      if (i < size && bits(static_cast<Eigen::Index>(i)) >= 0.5) value |= 1 << b;
    }
    out[digits - 1 - k] = kDigits[value];
  }
  return out;
}

JointDistribution bit_joint(const BitFunctionVector& f, const JointDistribution& joint) {
  require_size(f, joint.rows());
  Matrix q(2, joint.cols());
  q.row(0) = f.values().transpose() * joint.matrix();
  q.row(1) = joint.col_marginal().transpose() - q.row(0);
  return JointDistribution::validate(q);
}

Vector posterior_of_bit(const BitFunctionVector& f, const JointDistribution& joint) {
  require_size(f, joint.rows());
  if (!(joint.col_marginal().array() > 0.0).all()) {
    throw Error(ErrorCode::ZeroMarginal, "posterior needs p_Y strictly positive");
  }
  Vector g = (joint.matrix().transpose() * f.values()).cwiseQuotient(joint.col_marginal());
  return g.cwiseMax(0.0).cwiseMin(1.0);
}

FilterTrace filter_pipeline(const BitFunctionVector& f, const PicDecomposition& dec) {
  constexpr double kVectorTolerance = 1e-6;
  const Eigen::Index m = dec.left.rows();
  bool conforming = dec.right.rows() == m && dec.d + 1 == m &&
                    (dec.p_x - dec.p_y).cwiseAbs().maxCoeff() <= kDefaultTolerance;
  for (Eigen::Index k = 0; conforming && k <= dec.d; ++k) {
    if (dec.singulars(k) > kDefaultTolerance &&
        (dec.left.col(k) - dec.right.col(k)).cwiseAbs().maxCoeff() > kVectorTolerance) {
      conforming = false;
    }
  }
  if (!conforming) {
    throw Error(ErrorCode::NotConforming, "filter pipeline needs a conforming decomposition");
  }
  require_size(f, m);

  const Vector sqrt_d = dec.p_x.cwiseSqrt();
  FilterTrace trace;
  trace.transformed = dec.left.transpose() * sqrt_d.asDiagonal() * f.values();
  trace.filtered = dec.singulars.cwiseProduct(trace.transformed);
  trace.posterior = sqrt_d.cwiseInverse().asDiagonal() * dec.left * trace.filtered;
  return trace;
}

double second_moment_via_pics(const BitFunctionVector& f, const PicDecomposition& dec, double a) {
  require_size(f, dec.left.rows());
  const double mean = f.mean(dec.p_x);
  if (std::abs(a - mean) > kDefaultTolerance) {
    std::ostringstream os;
    os << "a = " << a << " but sum_i f_i p_X(i) = " << mean;
    throw Error(ErrorCode::InconsistentA, os.str());
  }
  const Vector projected = dec.left.transpose() * dec.p_x.cwiseSqrt().asDiagonal() * f.values();
  double total = 0.0;
  for (Eigen::Index i = 1; i <= dec.d; ++i) {
    total += dec.singulars(i) * dec.singulars(i) * projected(i) * projected(i);
  }
  return total;
}

}  // namespace inertia
