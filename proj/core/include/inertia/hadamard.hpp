#pragma once

#include "inertia/distribution.hpp"

#include <cstdint>
#include <span>

namespace inertia {

// Subsets S of [n] and points of {-1,1}^n are both n-bit masks; bit b set
// means coordinate b is in S, or equals -1. chi_S(x) = (-1)^{popcount(S & x)}.
int parity_sign(std::uint64_t subset, std::uint64_t point) noexcept;

// log2(size) when size is a power of two, otherwise throws NotPowerOfTwo.
int block_length_of(std::size_t size);

// In-place normalized Walsh-Hadamard transform in Sylvester ordering:
// v <- H v with H[s][t] = 2^{-n/2} (-1)^{popcount(s & t)}. Butterflies run
// in a fixed sequential order, so results are bit-reproducible.
void wht_inplace(std::span<double> v);

// Out-of-place wrapper; the transform is an involution.
Vector wht(const Vector& v);

}  // namespace inertia
