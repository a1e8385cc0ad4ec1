#pragma once

// Exhaustive small-n checks of the "most informative bit" inequalities for
// X^n uniform on {-1,1}^n and B = h(X^n):
//
//   I(B; Y^n) <= 1 - H_b(delta)      Y^n = X^n through a memoryless BSC(delta)
//   I(B; Y^n) <= I(B; Y~^n)          Y~^n = X^n through the (eps, 2^n)-SC with
//                                    eps = 2 delta (1 - 2^{-n})
//
// A clean scan is evidence, not a proof.

#include "inertia/distribution.hpp"
#include "inertia/onebit.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace inertia {

// h: {-1,1}^n -> {0,1} as a 2^n-bit truth table; bit i is h at input mask i.
class BooleanFunction {
 public:
  static constexpr int kMaxIntegerArity = 6;

  // n in [1, 6]; bits of `table` at or above 2^n must be zero.
  static BooleanFunction from_integer(int n, std::uint64_t table);
  // n in [1, 16], same digit order as BitFunctionVector::from_hex.
  static BooleanFunction from_hex(int n, std::string_view hex);
  static BooleanFunction dictator(int n, int coordinate);

  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool operator()(std::uint64_t mask) const { return values_[mask] != 0; }

  // Requires arity() <= 6.
  std::uint64_t to_integer() const;
  std::string to_hex() const;

  // h as 0/1 reals.
  Vector table() const;

  // f_i = p_{B|X}(0|i) = 1 - h(i).
  BitFunctionVector bit_function() const;

  bool operator==(const BooleanFunction&) const = default;

 private:
  BooleanFunction(int n, std::vector<std::uint8_t> values)
      : n_(n), values_(std::move(values)) {}

  int n_;
  std::vector<std::uint8_t> values_;
};

// h_hat_S = 2^{-n} sum_x h(x) chi_S(x), so h = sum_S h_hat_S chi_S and
// h_hat_empty = E[h] under uniform input.
Vector boolean_fourier(const BooleanFunction& h);

// I(B; Y^n) in bits for the 2^n x 2^n joint.
double mi_bit_output(const BooleanFunction& h, const JointDistribution& joint);

// Uniform-input joint of the (2 delta (1 - 2^{-n}), 2^n)-SC. Requires
// 0 <= delta <= 1/2.
JointDistribution tilde_channel(int n, double delta);

enum class ScanMode { Exhaustive, BalancedOnly };

std::string_view to_string(ScanMode mode) noexcept;
ScanMode scan_mode_from_string(std::string_view name);

struct ScanOptions {
  ScanMode mode = ScanMode::Exhaustive;
  double tol = 1e-9;
  unsigned threads = 1;
  bool keep_records = true;
};

struct ScanRecord {
  std::uint64_t table = 0;
  double expected_b = 0.0;  // E[B] = E[h(X^n)]
  double mi = 0.0;          // I(B; Y^n)
  double mi_tilde = 0.0;    // I(B; Y~^n)
};

enum class ViolationKind { ExceedsBound, ExceedsTilde };

struct ScanViolation {
  std::uint64_t table = 0;
  ViolationKind kind = ViolationKind::ExceedsBound;
  double mi = 0.0;
  double reference = 0.0;
};

struct ScanReport {
  int n = 0;
  double delta = 0.0;
  ScanMode mode = ScanMode::Exhaustive;
  double tol = 0.0;
  double bound = 0.0;  // 1 - H_b(delta)
  std::uint64_t functions_scanned = 0;
  std::vector<ScanRecord> records;  // ascending table order; empty unless kept
  double max_mi = 0.0;
  // smallest non-constant table with I(B; Y^n) >= max_mi - tol
  std::uint64_t argmax = 0;
  // min over non-constant h of I(B; Y~^n) - I(B; Y^n)
  double min_tilde_gap = 0.0;
  std::uint64_t min_tilde_gap_table = 0;
  // max over dictators of |I(B; Y^n) - (1 - H_b(delta))|
  double dictator_deviation = 0.0;
  std::vector<ScanViolation> violations;  // ascending table order
};

// Scans every h (or every balanced h) for 1 <= n <= 4 (TooLarge beyond).
// Complements share their information values, so only tables with the top
// bit clear are evaluated. Results do not depend on options.threads.
ScanReport scan(int n, double delta, const ScanOptions& options = {});

}  // namespace inertia
