#pragma once

#include "powsum/modmath.hpp"

#include <span>
#include <vector>

namespace powsum::ntt {

/// 2^64 - 2^32 + 1: prime, 2^32 divides modulus - 1, and it exceeds (2^22)^2,
/// so convolutions of 0/1 vectors of length up to 2^23 are recovered exactly.
inline constexpr u64 modulus = 0xFFFF'FFFF'0000'0001ull;
inline constexpr unsigned max_log_length = 32;

/// x * y mod `modulus` using the 2^64 = 2^32 - 1 folding identity.
u64 mul(u64 x, u64 y) noexcept;

/// In-place forward (or inverse, including the 1/n scaling) transform.
/// a.size() must be a power of two not exceeding 2^max_log_length.
void transform(std::span<u64> a, bool inverse);

/// Cyclic convolution of two equal-length power-of-two sequences of residues.
std::vector<u64> cyclic_convolution(std::vector<u64> a, std::vector<u64> b);

} // namespace powsum::ntt
