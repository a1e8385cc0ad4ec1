#include "inertia/conjecture.hpp"

#include "inertia/channels.hpp"
#include "inertia/error.hpp"
#include "inertia/hadamard.hpp"
#include "inertia/infomeasures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace inertia {
namespace {

constexpr int kMaxHexArity = 16;
constexpr int kMaxScanArity = 4;
constexpr double kCoefficientTolerance = 1e-12;

void require_arity(int n, int max_arity) {
  if (n < 1 || n > max_arity) {
    std::ostringstream os;
    os << "block length " << n << " outside [1, " << max_arity << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    std::ostringstream os;
    os << "delta = " << delta << " outside [0, 1/2]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

// Guards the parity structure the scan relies on: c_S = (1 - 2 delta)^{|S|}.
void check_bsc_coefficients(const AdditiveNoiseChannel& channel, double delta) {
  const Vector& coeffs = channel.coeffs();
  for (Eigen::Index s = 0; s < coeffs.size(); ++s) {
    const double expected =
        std::pow(1.0 - 2.0 * delta, std::popcount(static_cast<std::uint64_t>(s)));
    if (std::abs(coeffs(s) - expected) > kCoefficientTolerance) {
      std::ostringstream os;
      os << "memoryless BSC coefficient c[" << s << "] = " << coeffs(s) << " differs from "
         << expected;
      throw Error(ErrorCode::NumericalFailure, os.str());
    }
  }
}

double mi_from_table(int n, std::uint64_t table, const JointDistribution& joint) {
  return mi_bit_output(BooleanFunction::from_integer(n, table), joint);
}

}  // namespace

BooleanFunction BooleanFunction::from_integer(int n, std::uint64_t table) {
  require_arity(n, kMaxIntegerArity);
  const std::size_t size = std::size_t{1} << n;
  if (size < 64 && (table >> size) != 0) {
    std::ostringstream os;
    os << "truth table " << table << " has bits beyond 2^" << n << " inputs";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  std::vector<std::uint8_t> values(size);
  for (std::size_t i = 0; i < size; ++i) values[i] = static_cast<std::uint8_t>((table >> i) & 1U);
  return BooleanFunction(n, std::move(values));
}

BooleanFunction BooleanFunction::from_hex(int n, std::string_view hex) {
  require_arity(n, kMaxHexArity);
  const std::size_t size = std::size_t{1} << n;
  const Vector bits =
      BitFunctionVector::from_hex(hex, static_cast<Eigen::Index>(size)).values();
  std::vector<std::uint8_t> values(size);
  for (std::size_t i = 0; i < size; ++i) {
    values[i] = bits(static_cast<Eigen::Index>(i)) != 0.0 ? 1 : 0;
  }
  return BooleanFunction(n, std::move(values));
}

BooleanFunction BooleanFunction::dictator(int n, int coordinate) {
  require_arity(n, kMaxHexArity);
  if (coordinate < 0 || coordinate >= n) {
    std::ostringstream os;
    os << "coordinate " << coordinate << " outside [0, " << n << ")";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> values(size);
  for (std::size_t i = 0; i < size; ++i) values[i] = static_cast<std::uint8_t>((i >> coordinate) & 1U);
  return BooleanFunction(n, std::move(values));
}

std::uint64_t BooleanFunction::to_integer() const {
  if (n_ > kMaxIntegerArity) {
    throw Error(ErrorCode::TooLarge, "truth table does not fit in 64 bits");
  }
  std::uint64_t table = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    table |= static_cast<std::uint64_t>(values_[i]) << i;
  }
  return table;
}

std::string BooleanFunction::to_hex() const { return truth_table_hex(table()); }

Vector BooleanFunction::table() const {
  Vector v(static_cast<Eigen::Index>(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = values_[i];
  }
  return v;
}

BitFunctionVector BooleanFunction::bit_function() const {
  return BitFunctionVector::from_values(Vector::Ones(static_cast<Eigen::Index>(size())) - table());
}

Vector boolean_fourier(const BooleanFunction& h) {
  return wht(h.table()) / std::sqrt(static_cast<double>(h.size()));
}

double mi_bit_output(const BooleanFunction& h, const JointDistribution& joint) {
  const auto size = static_cast<Eigen::Index>(h.size());
  if (joint.rows() != size || joint.cols() != size) {
    std::ostringstream os;
    os << "joint is " << joint.rows() << " x " << joint.cols() << " but h has " << size
       << " inputs";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return f_information(bit_joint(h.bit_function(), joint), FDivergenceKernel::kl());
}

JointDistribution tilde_channel(int n, double delta) {
  require_arity(n, kMaxHexArity);
  require_delta(delta);
  const int q = 1 << n;
  const double epsilon = 2.0 * delta * (1.0 - std::ldexp(1.0, -n));
  return joint_from_channel(synthesize_qsc(q, epsilon), uniform_distribution(q));
}

std::string_view to_string(ScanMode mode) noexcept {
  return mode == ScanMode::Exhaustive ? "exhaustive" : "balanced-only";
}

ScanMode scan_mode_from_string(std::string_view name) {
  if (name == "exhaustive") return ScanMode::Exhaustive;
  if (name == "balanced-only") return ScanMode::BalancedOnly;
  throw Error(ErrorCode::InvalidArgument,
              "unknown scan mode '" + std::string(name) + "' (exhaustive | balanced-only)");
}

ScanReport scan(int n, double delta, const ScanOptions& options) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "block length must be at least 1");
  if (n > kMaxScanArity) {
    std::ostringstream os;
    os << "exhaustive scan over 2^(2^" << n << ") functions is not supported (n <= "
       << kMaxScanArity << ")";
    throw Error(ErrorCode::TooLarge, os.str());
  }
  require_delta(delta);
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw Error(ErrorCode::OutOfRange, "scan tolerance must be positive and finite");
  }

  const AdditiveNoiseChannel bsc = memoryless_bsc(n, delta);
  check_bsc_coefficients(bsc, delta);
  const JointDistribution joint = bsc.uniform_joint();
  const JointDistribution tilde = tilde_channel(n, delta);

  const int points = 1 << n;
  const std::uint64_t total = std::uint64_t{1} << points;
  const std::uint64_t half = total >> 1;  // tables with the top bit clear
  const std::uint64_t full = total - 1;
  const bool balanced_only = options.mode == ScanMode::BalancedOnly;

  // evaluated[t] for t < half; complements reuse them.
  std::vector<ScanRecord> evaluated(half);
  std::vector<std::uint8_t> included(half, 0);
  const unsigned workers =
      std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(half)));
  auto evaluate_range = [&](unsigned worker) {
    const std::uint64_t begin = half * worker / workers;
    const std::uint64_t end = half * (worker + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) {
      const int ones = std::popcount(t);
      if (balanced_only && ones != points / 2) continue;
      included[t] = 1;
      ScanRecord& r = evaluated[t];
      r.table = t;
      r.expected_b = static_cast<double>(ones) / points;
      r.mi = mi_from_table(n, t, joint);
      r.mi_tilde = mi_from_table(n, t, tilde);
    }
  };
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](unsigned worker) noexcept {
    try {
      evaluate_range(worker);
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ScanReport report;
  report.n = n;
  report.delta = delta;
  report.mode = options.mode;
  report.tol = options.tol;
  report.bound = 1.0 - binary_entropy(delta);
  report.max_mi = -std::numeric_limits<double>::infinity();
  report.min_tilde_gap = std::numeric_limits<double>::infinity();

  auto visit = [&](const ScanRecord& r) {
    ++report.functions_scanned;
    if (options.keep_records) report.records.push_back(r);
    const bool constant = r.table == 0 || r.table == full;
    if (!constant) {
      report.max_mi = std::max(report.max_mi, r.mi);
      const double gap = r.mi_tilde - r.mi;
      if (gap < report.min_tilde_gap) {
        report.min_tilde_gap = gap;
        report.min_tilde_gap_table = r.table;
      }
    }
    if (r.mi > report.bound + options.tol) {
      report.violations.push_back({r.table, ViolationKind::ExceedsBound, r.mi, report.bound});
    }
    if (r.mi > r.mi_tilde + options.tol) {
      report.violations.push_back({r.table, ViolationKind::ExceedsTilde, r.mi, r.mi_tilde});
    }
  };

  // Ascending table order: first the evaluated half, then the complements.
  for (std::uint64_t t = 0; t < half; ++t) {
    if (included[t]) visit(evaluated[t]);
  }
  for (std::uint64_t t = half; t < total; ++t) {
    const std::uint64_t complement = full ^ t;
    if (!included[complement]) continue;
    ScanRecord r = evaluated[complement];
    r.table = t;
    r.expected_b = 1.0 - r.expected_b;
    visit(r);
  }

  if (!std::isfinite(report.max_mi)) {
    report.max_mi = 0.0;
    report.min_tilde_gap = 0.0;
  } else {
    // Values within tol of the maximum are ties; the smallest table wins.
    for (std::uint64_t t = 1; t < full; ++t) {
      const std::uint64_t stored = t < half ? t : full ^ t;
      if (included[stored] && evaluated[stored].mi >= report.max_mi - options.tol) {
        report.argmax = t;
        break;
      }
    }
  }

  for (int b = 0; b < n; ++b) {
    const double mi = mi_bit_output(BooleanFunction::dictator(n, b), joint);
    report.dictator_deviation = std::max(report.dictator_deviation, std::abs(mi - report.bound));
  }
  return report;
}

}  // namespace inertia
