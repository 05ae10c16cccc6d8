#include "powsum/modmath.hpp"

#include "powsum/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace powsum {

namespace {

constexpr u64 trial_division_bound = 1'000'000;

struct TrialPrime {
    u64 prime;
    u64 inverse; // prime^-1 mod 2^64
    u64 limit;   // floor((2^64 - 1) / prime)
};

// n is divisible by an odd prime q iff n * q^-1 (mod 2^64) <= floor(max / q).
std::vector<TrialPrime> const& trial_primes()
{
    static std::vector<TrialPrime> const table = [] {
        std::vector<bool> composite(trial_division_bound, false);
        std::vector<TrialPrime> out;
        for (u64 i = 3; i < trial_division_bound; i += 2) {
            if (composite[i])
                continue;
            u64 inv = i; // Newton iteration, 5 steps doubles 3 -> 96 bits
            for (int k = 0; k < 5; ++k)
                inv *= 2 - i * inv;
            out.push_back({i, inv, ~u64{0} / i});
            for (u64 j = i * i; j < trial_division_bound; j += 2 * i)
                composite[j] = true;
        }
        return out;
    }();
    return table;
}

bool miller_rabin_round(u64 n, u64 d, int s, u64 a) noexcept
{
    a %= n;
    if (a == 0)
        return true;
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

u64 pollard_brent(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        auto f = [n, c](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
        u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
        constexpr u64 batch = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            for (u64 k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            // batch overshot: replay one step at a time
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void collect_factors(u64 n, std::vector<u64>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 const d = pollard_brent(n);
    collect_factors(d, out);
    collect_factors(n / d, out);
}

} // namespace

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept
{
    if (m == 1)
        return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 m)
{
    // extended Euclid on signed 128-bit coefficients
    __extension__ typedef __int128 i128;
    i128 old_r = a % m, r = m;
    i128 old_s = 1, s = 0;
    while (r != 0) {
        i128 const q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1)
        throw PreconditionError("inverse_mod: " + std::to_string(a) + " is not invertible modulo " +
                                std::to_string(m));
    i128 const im = static_cast<i128>(m);
    return static_cast<u64>(((old_s % im) + im) % im);
}

bool is_prime(u64 n) noexcept
{
    if (n < 2)
        return false;
    static constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 const q : witnesses) {
        if (n % q == 0)
            return n == q;
    }
    int const s = std::countr_zero(n - 1);
    u64 const d = (n - 1) >> s;
    // this witness set is exact below 3.3 * 10^24
    return std::ranges::all_of(witnesses, [&](u64 a) { return miller_rabin_round(n, d, s, a); });
}

u64 Factorization::value() const noexcept
{
    u64 v = 1;
    for (auto const& [q, e] : pairs)
        for (unsigned i = 0; i < e; ++i)
            v *= q;
    return v;
}

Factorization factorize(u64 n)
{
    if (n == 0)
        throw PreconditionError("factorize: n must be >= 1");
    Factorization f;
    if (n % 2 == 0) {
        unsigned const e = static_cast<unsigned>(std::countr_zero(n));
        f.pairs.emplace_back(2, e);
        n >>= e;
    }
    for (auto const& tp : trial_primes()) {
        if (tp.prime * tp.prime > n)
            break;
        if (n * tp.inverse > tp.limit)
            continue;
        unsigned e = 0;
        while (n * tp.inverse <= tp.limit) {
            n *= tp.inverse; // exact division
            ++e;
        }
        f.pairs.emplace_back(tp.prime, e);
    }
    if (n > 1) {
        std::vector<u64> rest;
        collect_factors(n, rest);
        std::ranges::sort(rest);
        for (u64 q : rest) {
            if (!f.pairs.empty() && f.pairs.back().first == q)
                ++f.pairs.back().second;
            else
                f.pairs.emplace_back(q, 1);
        }
    }
    return f;
}

u64 divisor_count(Factorization const& f) noexcept
{
    u64 count = 1;
    for (auto const& [q, e] : f.pairs)
        count *= e + 1;
    return count;
}

u64 divisor_count(u64 n) { return divisor_count(factorize(n)); }

std::vector<u64> divisors(Factorization const& f)
{
    std::vector<u64> out{1};
    for (auto const& [q, e] : f.pairs) {
        std::size_t const base = out.size();
        u64 power = 1;
        for (unsigned i = 0; i < e; ++i) {
            power *= q;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * power);
        }
    }
    std::ranges::sort(out);
    return out;
}

std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

std::complex<double> unit_root(u64 k, u64 p) noexcept
{
    k %= p;
    if (k == 0)
        return {1.0, 0.0};
    // reduce to the angle in (-pi, pi] for accuracy
    double const frac = (k <= p / 2) ? static_cast<double>(k) / static_cast<double>(p)
                                     : -static_cast<double>(p - k) / static_cast<double>(p);
    double const theta = 2.0 * std::numbers::pi * frac;
    return {std::cos(theta), std::sin(theta)};
}

FieldCtx::FieldCtx(u64 p) : p_(p)
{
    if (!is_prime(p))
        throw PreconditionError("FieldCtx: p=" + std::to_string(p) + " is not prime");
    pm1_ = std::make_shared<Factorization const>(factorize(p - 1));
    if (p <= root_table_limit) {
        std::vector<std::complex<double>> table(p);
        for (u64 k = 0; k < p; ++k)
            table[k] = unit_root(k, p);
        roots_ = std::make_shared<std::vector<std::complex<double>> const>(std::move(table));
    }
}

u64 multiplicative_order(FieldCtx const& field, u64 g)
{
    u64 const p = field.p();
    if (g % p == 0)
        throw PreconditionError("multiplicative_order: g must be nonzero modulo p");
    g %= p;
    u64 t = p - 1;
    for (auto const& [q, e] : field.group_order_factors().pairs) {
        for (unsigned i = 0; i < e && t % q == 0 && field.pow(g, t / q) == 1; ++i)
            t /= q;
    }
    return t;
}

u64 primitive_root(FieldCtx const& field)
{
    u64 const p = field.p();
    if (p == 2)
        return 1;
    auto const& factors = field.group_order_factors().pairs;
    for (u64 r = 2; r < p; ++r) {
        bool const generates = std::ranges::none_of(
            factors, [&](auto const& qe) { return field.pow(r, (p - 1) / qe.first) == 1; });
        if (generates)
            return r;
    }
    throw PreconditionError("primitive_root: none found"); // unreachable for prime p
}

SubgroupCtx::SubgroupCtx(FieldCtx field, u64 g) : field_(std::move(field)), g_(g), t_(0)
{
    if (g_ == 0 || g_ >= field_.p())
        throw PreconditionError("SubgroupCtx: g must lie in [1, p-1]");
    t_ = multiplicative_order(field_, g_);
}

SubgroupCtx element_of_order(FieldCtx const& field, u64 t)
{
    u64 const p = field.p();
    if (t == 0 || (p - 1) % t != 0)
        throw PreconditionError("element_of_order: t=" + std::to_string(t) + " does not divide p-1=" +
                                std::to_string(p - 1));
    u64 const g = field.pow(primitive_root(field), (p - 1) / t);
    SubgroupCtx ctx(field, g);
    if (ctx.t() != t)
        throw PreconditionError("element_of_order: internal order mismatch"); // unreachable
    return ctx;
}

} // namespace powsum
