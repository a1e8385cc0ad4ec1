#include "inertia/hadamard.hpp"

#include "inertia/error.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace inertia {

int parity_sign(std::uint64_t subset, std::uint64_t point) noexcept {
  return (std::popcount(subset & point) & 1) != 0 ? -1 : 1;
}

int block_length_of(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) {
    std::ostringstream os;
    os << "length " << size << " is not a power of two";
    throw Error(ErrorCode::NotPowerOfTwo, os.str());
  }
  return std::countr_zero(size);
}

void wht_inplace(std::span<double> v) {
  const int n = block_length_of(v.size());
  const std::size_t len = v.size();
  for (std::size_t half = 1; half < len; half <<= 1) {
    for (std::size_t block = 0; block < len; block += 2 * half) {
      for (std::size_t k = block; k < block + half; ++k) {
        const double a = v[k];
        const double b = v[k + half];
        v[k] = a + b;
        v[k + half] = a - b;
      }
    }
  }
  const double scale =
      std::ldexp(1.0, -n / 2) * ((n % 2) != 0 ? 1.0 / std::numbers::sqrt2 : 1.0);
  for (double& x : v) x *= scale;
}

Vector wht(const Vector& v) {
  Vector out = v;
  wht_inplace(std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

}  // namespace inertia
