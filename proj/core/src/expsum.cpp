#include "powsum/expsum.hpp"

#include "powsum/error.hpp"
#include "powsum/parallel.hpp"
#include "powsum/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace powsum {

namespace {

void require_length(SubgroupCtx const& ctx, u64 N)
{
    if (N > ctx.t())
        throw PreconditionError("N exceeds order t=" + std::to_string(ctx.t()));
}

std::vector<u64> powers(SubgroupCtx const& ctx, u64 N)
{
    std::vector<u64> out;
    out.reserve(N);
    u64 y = ctx.g();
    for (u64 n = 1; n <= N; ++n) {
        out.push_back(y);
        y = ctx.field().mul(y, ctx.g());
    }
    return out;
}

} // namespace

ComplexAcc eval_sum(SubgroupCtx const& ctx, u64 lambda, u64 N)
{
    require_length(ctx, N);
    if (lambda >= ctx.p())
        throw PreconditionError("lambda must lie in [0, p-1]");
    FieldCtx const& field = ctx.field();
    ComplexAcc acc;
    u64 y = field.mul(lambda, ctx.g());
    for (u64 n = 1; n <= N; ++n) {
        acc.add(field.e(y));
        y = field.mul(y, ctx.g());
    }
    return acc;
}

ComplexAcc sigma_hybrid(SubgroupCtx const& ctx, u64 a, u64 c)
{
    u64 const t = ctx.t();
    if (a >= t)
        throw PreconditionError("sigma: a must lie in [0, t-1]");
    if (c >= ctx.p())
        throw PreconditionError("sigma: c must lie in [0, p-1]");
    FieldCtx const& field = ctx.field();
    ComplexAcc acc;
    u64 y = field.mul(c, ctx.g());
    u64 phase = a; // a*n mod t for n = 1
    for (u64 n = 1; n <= t; ++n) {
        acc.add(unit_root(phase, t) * field.e(y));
        y = field.mul(y, ctx.g());
        phase = add_mod(phase, a, t);
    }
    return acc;
}

SigmaMax sigma_max(SubgroupCtx const& ctx, unsigned workers)
{
    FieldCtx const& field = ctx.field();
    u64 const t = ctx.t();
    u64 const cosets = (ctx.p() - 1) / t;
    u64 const root = primitive_root(field);

    std::vector<std::complex<double>> et(t);
    for (u64 k = 0; k < t; ++k)
        et[k] = unit_root(k, t);

    std::vector<SigmaMax> best(cosets);
    parallel_for(
        cosets,
        [&](std::size_t j) {
            u64 const c = field.pow(root, j);
            std::vector<std::complex<double>> terms(t);
            u64 y = field.mul(c, ctx.g());
            for (u64 n = 0; n < t; ++n) {
                terms[n] = field.e(y);
                y = field.mul(y, ctx.g());
            }
            SigmaMax local{-1.0, 0, c};
            for (u64 a = 0; a < t; ++a) {
                ComplexAcc acc;
                u64 phase = a;
                for (u64 n = 0; n < t; ++n) {
                    acc.add(et[phase] * terms[n]);
                    phase = add_mod(phase, a, t);
                }
                double const m = acc.magnitude();
                if (m > local.magnitude)
                    local = {m, a, c};
            }
            best[j] = local;
        },
        workers);

    SigmaMax out{-1.0, 0, 0};
    for (auto const& b : best)
        if (b.magnitude > out.magnitude)
            out = b;
    return out;
}

std::vector<u64> select_lambdas(SubgroupCtx const& ctx, LambdaSelection const& selection)
{
    u64 const p = ctx.p();
    std::vector<u64> out;
    if (selection.mode == LambdaMode::exhaustive) {
        if (p > exhaustive_lambda_limit)
            throw GuardError("exhaustive lambda scan refused for p=" + std::to_string(p) + " > " +
                             std::to_string(exhaustive_lambda_limit));
        out.resize(p - 1);
        for (u64 i = 0; i + 1 < p; ++i)
            out[i] = i + 1;
        return out;
    }
    Rng rng(selection.seed);
    u64 const count = std::min<u64>(selection.samples, p - 1);
    out = rng.sample_distinct(p - 1, count);
    for (auto& v : out)
        ++v;
    return out;
}

std::vector<LambdaStats> scan_lambdas(SubgroupCtx const& ctx, std::span<u64 const> grid,
                                      std::span<u64 const> lambdas, unsigned workers)
{
    std::vector<LambdaStats> stats(grid.size());
    if (grid.empty())
        return stats;
    if (!std::ranges::is_sorted(grid) || grid.front() == 0)
        throw PreconditionError("scan_lambdas: grid must be ascending and positive");
    require_length(ctx, grid.back());

    FieldCtx const& field = ctx.field();
    u64 const g = ctx.g();
    std::size_t const width = grid.size();
    std::vector<double> norms(lambdas.size() * width);

    parallel_for(
        lambdas.size(),
        [&](std::size_t i) {
            ComplexAcc acc;
            u64 y = field.mul(lambdas[i], g);
            std::size_t slot = 0;
            for (u64 n = 1; slot < width; ++n) {
                acc.add(field.e(y));
                y = field.mul(y, g);
                while (slot < width && grid[slot] == n)
                    norms[i * width + slot++] = std::norm(acc.value());
            }
        },
        workers);

    for (std::size_t k = 0; k < width; ++k) {
        CompensatedSum sq, fourth;
        double best = -1.0;
        u64 best_lambda = 0;
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            double const nm = norms[i * width + k];
            sq.add(nm);
            fourth.add(nm * nm);
            if (nm > best) {
                best = nm;
                best_lambda = lambdas[i];
            }
        }
        stats[k] = {grid[k], best_lambda, best < 0 ? 0.0 : std::sqrt(best), sq.value(), fourth.value()};
    }
    return stats;
}

MaxResult max_over_lambda(SubgroupCtx const& ctx, u64 N, LambdaSelection const& selection,
                          unsigned workers)
{
    if (N == 0)
        throw PreconditionError("max_over_lambda: N must be >= 1");
    require_length(ctx, N);
    auto const lambdas = select_lambdas(ctx, selection);
    u64 const grid[] = {N};
    auto const stats = scan_lambdas(ctx, grid, lambdas, workers);

    MaxResult out;
    out.evaluated = lambdas.size();
    out.lower_bound = selection.mode == LambdaMode::sampled;
    if (lambdas.empty())
        return out;
    out.lambda = stats[0].argmax_lambda;
    ComplexAcc const at = eval_sum(ctx, out.lambda, N);
    out.value = at.value();
    out.magnitude = at.magnitude();
    return out;
}

u64 count_J(SubgroupCtx const& ctx, u64 N, JBackend backend, CountLimits const& limits)
{
    if (N == 0)
        throw PreconditionError("count_J: N must be >= 1");
    require_length(ctx, N);
    u64 const p = ctx.p();
    auto const pw = powers(ctx, N);

    if (backend == JBackend::naive) {
        if (N > limits.naive_max_N)
            throw GuardError("count_J naive backend limited to N <= " + std::to_string(limits.naive_max_N));
        auto sorted = pw;
        std::ranges::sort(sorted);
        u64 j = 0;
        for (u64 a : pw)
            for (u64 b : pw) {
                u64 const s = add_mod(a, b, p);
                for (u64 c : pw) {
                    // g^x4 = g^x1 + g^x2 - g^x3; the powers are distinct since N <= t
                    if (std::ranges::binary_search(sorted, sub_mod(s, c, p)))
                        ++j;
                }
            }
        return j;
    }

    if (N > limits.hashed_max_pairs / N)
        throw GuardError("count_J: N^2=" + std::to_string(N) + "^2 pair sums exceed limit " +
                         std::to_string(limits.hashed_max_pairs));

    u64 j = 0;
    if (p <= (u64{1} << 24)) {
        std::vector<std::uint32_t> counts(p, 0);
        for (u64 a : pw)
            for (u64 b : pw)
                ++counts[add_mod(a, b, p)];
        for (u64 a : pw)
            for (u64 b : pw)
                j += counts[add_mod(a, b, p)];
        return j;
    }
    std::unordered_map<u64, u64> counts;
    counts.reserve(N * N);
    for (u64 a : pw)
        for (u64 b : pw)
            ++counts[add_mod(a, b, p)];
    for (auto const& [s, c] : counts)
        j += c * c;
    return j;
}

MomentResult fourth_moment(SubgroupCtx const& ctx, u64 N, unsigned workers, CountLimits const& limits)
{
    MomentResult out;
    out.j_count = count_J(ctx, N, JBackend::hashed, limits);
    if (__builtin_mul_overflow(ctx.p(), out.j_count, &out.fourth_moment_all))
        throw GuardError("fourth_moment: p*J overflows 64 bits");
    out.derived_nonzero = out.fourth_moment_all - N * N * N * N;
    out.fourth_moment_nonzero = static_cast<double>(out.derived_nonzero);
    if (ctx.p() <= direct_moment_limit) {
        auto const lambdas = select_lambdas(ctx, LambdaSelection::exhaustive());
        u64 const grid[] = {N};
        out.direct_nonzero = scan_lambdas(ctx, grid, lambdas, workers)[0].sum_fourth;
        out.fourth_moment_nonzero = *out.direct_nonzero;
    }
    return out;
}

} // namespace powsum
