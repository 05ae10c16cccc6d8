#pragma once

#include "powsum/compensated.hpp"
#include "powsum/modmath.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace powsum {

/// S(lambda, N) = sum_{n=1}^{N} e_p(lambda g^n).
///
/// Terms are generated by y <- y*g, one modular multiply each. lambda = 0 is
/// admitted (the sum is N); callers enforcing gcd(lambda, p) = 1 must check it
/// themselves. Throws PreconditionError when N > t or lambda >= p.
ComplexAcc eval_sum(SubgroupCtx const& ctx, u64 lambda, u64 N);

/// sigma(a, c) = sum_{n=1}^{t} e_t(a n) e_p(c g^n), with 0 <= a < t and 0 <= c < p.
ComplexAcc sigma_hybrid(SubgroupCtx const& ctx, u64 a, u64 c);

struct SigmaMax {
    double magnitude = 0.0;
    u64 a = 0;
    u64 c = 0;
};

/// max |sigma(a, c)| over 0 <= a < t and c in F_p^*.
///
/// |sigma(a, c g)| = |sigma(a, c)|, so only one c per coset of <g> is evaluated.
SigmaMax sigma_max(SubgroupCtx const& ctx, unsigned workers = 0);

enum class LambdaMode { exhaustive, sampled };

struct LambdaSelection {
    LambdaMode mode = LambdaMode::exhaustive;
    u64 samples = 0;
    u64 seed = 0;

    static LambdaSelection exhaustive() { return {}; }
    static LambdaSelection sampled(u64 count, u64 seed) { return {LambdaMode::sampled, count, seed}; }
};

inline constexpr u64 exhaustive_lambda_limit = 1'000'000;

/// The lambdas a selection visits, ascending. Exhaustive mode is {1, ..., p-1}
/// and is refused above exhaustive_lambda_limit; sampled mode draws
/// min(samples, p-1) distinct values.
std::vector<u64> select_lambdas(SubgroupCtx const& ctx, LambdaSelection const& selection);

struct MaxResult {
    u64 lambda = 0;
    double magnitude = 0.0;
    std::complex<double> value;
    u64 evaluated = 0;
    bool lower_bound = false; // true for sampled selections
};

/// max over the selected lambda of |S(lambda, N)|; ties go to the smallest lambda.
MaxResult max_over_lambda(SubgroupCtx const& ctx, u64 N, LambdaSelection const& selection,
                          unsigned workers = 0);

/// Aggregates over a lambda list for one N. Sums are compensated and reduced
/// in lambda order.
struct LambdaStats {
    u64 N = 0;
    u64 argmax_lambda = 0;
    double max_magnitude = 0.0;
    double sum_sq = 0.0;     // sum |S|^2
    double sum_fourth = 0.0; // sum |S|^4
};

/// One pass per lambda up to max(grid), recording stats at every grid point.
/// `grid` must be ascending with entries in [1, t]; `lambdas` ascending.
std::vector<LambdaStats> scan_lambdas(SubgroupCtx const& ctx, std::span<u64 const> grid,
                                      std::span<u64 const> lambdas, unsigned workers = 0);

enum class JBackend { naive, hashed };

struct CountLimits {
    u64 naive_max_N = 300;
    u64 hashed_max_pairs = u64{1} << 26;
};

/// J(g, N) = #{(x1..x4) in [1,N]^4 : g^x1 + g^x2 = g^x3 + g^x4 (mod p)}.
///
/// naive: for every (x1, x2, x3), look up x4 solving the equation.
/// hashed: multiplicities of the N^2 pair sums, then sum of squares.
u64 count_J(SubgroupCtx const& ctx, u64 N, JBackend backend = JBackend::hashed,
            CountLimits const& limits = {});

struct MomentResult {
    u64 j_count = 0;
    u64 fourth_moment_all = 0;          // p * J, exact
    double fourth_moment_nonzero = 0.0; // direct when available, else derived
    u64 derived_nonzero = 0;            // p * J - N^4
    std::optional<double> direct_nonzero;
};

inline constexpr u64 direct_moment_limit = 10'000;

/// Fourth moment over lambda via J; the lambda != 0 part is also summed
/// directly when p <= direct_moment_limit.
MomentResult fourth_moment(SubgroupCtx const& ctx, u64 N, unsigned workers = 0,
                           CountLimits const& limits = {});

} // namespace powsum
