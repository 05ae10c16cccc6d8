#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace powsum {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

// ---------------------------------------------------------------------------
// Word-level modular arithmetic. All functions expect operands already
// reduced below the modulus.
// ---------------------------------------------------------------------------

inline u64 add_mod(u64 a, u64 b, u64 m) noexcept
{
    u64 const s = a + b;
    // wraps past 2^64 or lands at/above m
    return (s < a || s >= m) ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + (m - b); }

inline u64 mul_mod(u64 a, u64 b, u64 m) noexcept
{
    if (m <= 0xFFFFFFFFull)
        return (a * b) % m;
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

/// Inverse of a modulo m; requires gcd(a, m) == 1.
u64 inverse_mod(u64 a, u64 m);

/// Deterministic for every 64-bit input.
bool is_prime(u64 n) noexcept;

struct Factorization {
    std::vector<std::pair<u64, unsigned>> pairs; // strictly increasing primes

    u64 value() const noexcept;
    bool operator==(Factorization const&) const = default;
};

/// Trial division below 10^6, then Pollard-Brent on the cofactor.
Factorization factorize(u64 n);

u64 divisor_count(u64 n);
u64 divisor_count(Factorization const& f) noexcept;

/// All positive divisors in increasing order.
std::vector<u64> divisors(Factorization const& f);
std::vector<u64> divisors(u64 n);

/// e_p(k) = exp(2 pi i k / p), computed from the reduced angle.
std::complex<double> unit_root(u64 k, u64 p) noexcept;

/// A prime modulus with the factorization of p-1 and, for p <= 2^22,
/// a table of the p-th roots of unity. Copies share the table.
class FieldCtx {
public:
    static constexpr u64 root_table_limit = u64{1} << 22;

    explicit FieldCtx(u64 p);

    u64 p() const noexcept { return p_; }
    Factorization const& group_order_factors() const noexcept { return *pm1_; }
    bool has_root_table() const noexcept { return roots_ != nullptr; }

    /// e_p(k) for k in [0, p).
    std::complex<double> e(u64 k) const noexcept
    {
        return roots_ ? (*roots_)[k] : unit_root(k, p_);
    }

    u64 mul(u64 a, u64 b) const noexcept { return mul_mod(a, b, p_); }
    u64 pow(u64 a, u64 e) const noexcept { return pow_mod(a, e, p_); }

private:
    u64 p_;
    std::shared_ptr<Factorization const> pm1_;
    std::shared_ptr<std::vector<std::complex<double>> const> roots_;
};

/// Least t >= 1 with g^t = 1 (mod p), found by stripping prime factors of p-1.
u64 multiplicative_order(FieldCtx const& field, u64 g);

/// Smallest primitive root modulo p (scan from 1 upward).
u64 primitive_root(FieldCtx const& field);

/// g of order exactly t inside a field; invariants are checked on construction.
class SubgroupCtx {
public:
    SubgroupCtx(FieldCtx field, u64 g);

    FieldCtx const& field() const noexcept { return field_; }
    u64 p() const noexcept { return field_.p(); }
    u64 g() const noexcept { return g_; }
    u64 t() const noexcept { return t_; }

private:
    FieldCtx field_;
    u64 g_;
    u64 t_;
};

/// r^((p-1)/t) for the least primitive root r.
SubgroupCtx element_of_order(FieldCtx const& field, u64 t);

} // namespace powsum
