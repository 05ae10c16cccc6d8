#pragma once

#include "powsum/modmath.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace powsum::harness {

struct SuiteResult {
    std::string name;
    u64 checks = 0;
    u64 passed = 0;
    std::vector<std::string> failures; // one counterexample description each

    bool ok() const noexcept { return failures.empty() && passed == checks; }
};

inline constexpr double parseval_tolerance = 1e-9;
inline constexpr double fourth_moment_tolerance = 1e-6;

/// Parseval and the fourth-moment identity over every prime p <= cap, every
/// t | p-1 and every N <= min(t, max_N), with direct sums over all lambda.
SuiteResult verify_identities(u64 cap, u64 max_N = 40, unsigned workers = 0);

/// naive, hashed and transform representation counts agree exactly on seeded
/// random set pairs modulo primes p <= cap.
SuiteResult verify_backends(u64 cap, u64 pairs = 200, u64 max_size = 150, u64 seed = 1);

/// The bilinear-sum energy inequality with constant 1 on seeded random pairs.
SuiteResult verify_lemma2(u64 cap, u64 pairs = 500, u64 seed = 2);

/// S(lambda, p-1) = -1 for g a primitive root, on `primes` seeded primes <= cap.
SuiteResult verify_complete_sums(u64 cap = 10'000, u64 primes = 50, u64 lambdas = 10, u64 seed = 3);

struct Lemma1Entry {
    u64 p = 0;
    u64 t = 0;
    u64 M = 0;
    u64 L1 = 0;
    u64 L2 = 0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    u64 sumset_size = 0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct Lemma1Report {
    std::vector<Lemma1Entry> entries;
    double min_ratio = 0.0;
};

/// |A + B| against the power-set sumset bound on seeded (t, M, delta1, delta2)
/// configurations. Report only: the bound hides o(1) terms and constants.
Lemma1Report lemma1_report(u64 configs = 50, u64 cap = 10'000, u64 seed = 4);

/// Primes in [2, cap].
std::vector<u64> primes_up_to(u64 cap);

} // namespace powsum::harness
