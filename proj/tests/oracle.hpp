#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// powsum beyond plain data types, so agreement is evidence rather than echo.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using big = boost::multiprecision::cpp_dec_float_100;

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline u64 order(u64 p, u64 g)
{
    u64 x = g % p;
    for (u64 s = 1;; ++s) {
        if (x == 1)
            return s;
        x = x * g % p;
    }
}

inline std::vector<u64> powers(u64 p, u64 g, u64 N)
{
    std::vector<u64> out;
    u64 x = 1;
    for (u64 n = 1; n <= N; ++n) {
        x = x * g % p;
        out.push_back(x);
    }
    return out;
}

/// Direct summation in long double, angle reduced mod p first.
inline std::complex<long double> sum(u64 p, u64 g, u64 lambda, u64 N)
{
    long double re = 0, im = 0;
    for (u64 x : powers(p, g, N)) {
        long double const angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(lambda * x % p) /
                                  static_cast<long double>(p);
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return {re, im};
}

/// All N^4 quadruples.
inline u64 J(u64 p, u64 g, u64 N)
{
    auto const a = powers(p, g, N);
    u64 count = 0;
    for (u64 x1 : a)
        for (u64 x2 : a)
            for (u64 x3 : a)
                for (u64 x4 : a)
                    count += (x1 + x2) % p == (x3 + x4) % p;
    return count;
}

/// Quadruples (a1, a2, b1, b2) with a1 + b1 = a2 + b2, b2 found by membership.
inline u64 energy(std::vector<u64> const& A, std::vector<u64> const& B, u64 p)
{
    std::vector<char> inB(p, 0);
    for (u64 b : B)
        inB[b] = 1;
    u64 count = 0;
    for (u64 a1 : A)
        for (u64 a2 : A)
            for (u64 b1 : B)
                count += inB[(a1 + b1 + p - a2) % p];
    return count;
}

inline std::set<u64> sumset(std::vector<u64> const& A, std::vector<u64> const& B, u64 p)
{
    std::set<u64> out;
    for (u64 a : A)
        for (u64 b : B)
            out.insert((a + b) % p);
    return out;
}

// ---- 100-digit formula evaluation ---------------------------------------

inline big pw(big const& x, long num, long den)
{
    return boost::multiprecision::exp(big(num) / big(den) * boost::multiprecision::log(x));
}

inline big B(u64 x) { return big(std::to_string(x)); }

struct Regime {
    big value;
    int regime;
};

inline big korobov(u64 p) { return boost::multiprecision::sqrt(B(p)) * boost::multiprecision::log(B(p)); }

inline big theorem1(u64 p, u64 t, u64 N)
{
    big const n = B(N);
    return B(p) * pw(n, 71, 24) * (1 + pw(n * n / B(t), 1, 24));
}

inline Regime theorem2(u64 p, u64 t, u64 N)
{
    big const P = B(p), T = B(t), n = B(N);
    if (n * n <= T)
        return {pw(P, 1, 8) * pw(n, 71, 96), 1};
    if (n * n <= P)
        return {pw(P, 1, 8) * pw(T, -1, 96) * pw(n, 73, 96), 2};
    return {pw(P, 1, 4) * pw(T, -1, 96) * pw(n, 49, 96), 3};
}

inline Regime theorem3(u64 p, u64 t)
{
    big const P = B(p), T = B(t), L = boost::multiprecision::log(P);
    if (T * T <= P)
        return {pw(P, 1, 8) * pw(T, 22, 36) * pw(L, 7, 6), 1};
    if (T <= pw(P, 3, 5) * pw(L, -6, 5))
        return {pw(P, 1, 4) * pw(T, 13, 36) * pw(L, 7, 6), 2};
    if (T <= pw(P, 2, 3) * pw(L, -2, 3))
        return {pw(P, 1, 6) * pw(T, 1, 2) * pw(L, 4, 3), 3};
    return {boost::multiprecision::sqrt(P) * L, 4};
}

inline Regime corollary(u64 p, u64 N)
{
    big const P = B(p), n = B(N);
    if (n * n * n * n <= P)
        return {pw(P, 1, 8) * pw(n, 71, 96), 1};
    if (n <= pw(P, 179, 438))
        return {pw(P, 23, 192) * pw(n, 73, 96), 2};
    return {pw(P, 31, 72), 3};
}

/// Densities as exact fractions k/M.
inline big lemma1(u64 M, u64 t, u64 k1, u64 k2)
{
    big const m = B(M), d1 = B(k1) / m, d2 = B(k2) / m;
    big const first = pw(m, 9, 8) * pw(d1, 3, 4) * d2;
    big const second = pw(B(t), 1, 8) * pw(m, 7, 8) * pw(d1, 5, 8) * d2;
    return first < second ? first : second;
}

inline big lemma2_rhs(u64 p, u64 a, u64 b, u64 ea, u64 eb)
{
    big const A = B(a), Bb = B(b);
    return B(p) * A * A * A * A * Bb * Bb * Bb * Bb * B(ea) * B(eb);
}

inline std::pair<big, big> lemma3(u64 p, u64 t, u64 E)
{
    big const lt = boost::multiprecision::log(B(t));
    big const e4 = pw(B(E), 1, 4);
    return {pw(B(p), 1, 8) * e4 * lt, pw(B(p), 1, 4) * pw(B(t), -1, 4) * e4 * lt};
}

inline Regime shkredov(u64 p, u64 t)
{
    big const P = B(p), T = B(t), L = boost::multiprecision::log(P);
    if (T <= pw(P, 3, 5) * pw(L, -6, 5))
        return {pw(T, 22, 9) * pw(L, 2, 3), 1};
    return {T * T * T * pw(P, -1, 3) * pw(L, 4, 3), 2};
}

inline double rel(double value, big const& expected)
{
    big const e = expected;
    big const diff = abs(big(value) - e) / abs(e);
    return diff.convert_to<double>();
}

} // namespace oracle
