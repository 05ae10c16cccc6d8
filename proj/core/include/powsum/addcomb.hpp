#pragma once

#include "powsum/residue_set.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace powsum {

/// A + B = {a + b}
ResidueSet sumset(ResidueSet const& A, ResidueSet const& B);

/// A * B = {a b}
ResidueSet product_set(ResidueSet const& A, ResidueSet const& B);

/// A - B = {a - b}
ResidueSet difference_set(ResidueSet const& A, ResidueSet const& B);

/// A / B = {a b^-1 : b != 0}. Empty when B is contained in {0}.
ResidueSet ratio_set(ResidueSet const& A, ResidueSet const& B);

inline constexpr std::size_t difference_quotient_limit = 500;

/// (A - A) / (A - A) with a zero denominator excluded; |A| in [2, 500].
ResidueSet difference_quotient_set(ResidueSet const& A);

/// r(s) = #{(a, b) in A x B : a + b = s}, stored sparsely (only r(s) > 0).
class RepCounts {
public:
    RepCounts(u64 p, std::vector<std::pair<u64, u64>> entries);

    u64 modulus() const noexcept { return p_; }
    u64 at(u64 s) const noexcept;
    std::vector<std::pair<u64, u64>> const& entries() const noexcept { return entries_; }

    /// sum_s r(s) = |A| |B|
    u64 total() const noexcept;
    /// sum_s r(s)^2 = E+(A, B)
    u64 energy() const noexcept;

    bool operator==(RepCounts const&) const = default;

private:
    u64 p_;
    std::vector<std::pair<u64, u64>> entries_; // ascending s
};

enum class EnergyBackend { naive, hashed, transform };

inline constexpr u64 transform_modulus_limit = u64{1} << 22;

/// naive: double loop into an ordered map.
/// hashed: double loop into a hash table.
/// transform: indicator convolution over a 64-bit NTT prime, folded mod p.
RepCounts rep_counts(ResidueSet const& A, ResidueSet const& B, EnergyBackend backend = EnergyBackend::hashed);

/// E+(A, B) = #{(a1, a2, b1, b2) : a1 + b1 = a2 + b2}
u64 additive_energy(ResidueSet const& A, ResidueSet const& B, EnergyBackend backend = EnergyBackend::hashed);

} // namespace powsum
