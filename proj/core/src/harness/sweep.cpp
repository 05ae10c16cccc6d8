#include "powsum/harness/sweep.hpp"

#include "powsum/addcomb.hpp"
#include "powsum/bounds.hpp"
#include "powsum/error.hpp"
#include "powsum/parallel.hpp"
#include "powsum/residue_set.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace powsum::harness {

namespace {

using Clock = std::chrono::steady_clock;

constexpr u64 hashed_energy_max_t = u64{1} << 13;

struct Deadline {
    bool enabled = false;
    Clock::time_point at;

    bool expired() const { return enabled && Clock::now() > at; }
};

struct Job {
    u64 p;
    u64 t;
};

std::string mode_label(LambdaSelection const& s)
{
    return s.mode == LambdaMode::exhaustive ? "exhaustive" : "sampled";
}

ReportRow key_row(SweepConfig const& config, u64 p, u64 t, u64 N)
{
    ReportRow r;
    r.p = p;
    r.t = t;
    r.N = N;
    r.lambda_mode = mode_label(config.lambdas);
    return r;
}

std::vector<ReportRow> status_rows(SweepConfig const& config, u64 p, u64 t, std::string const& status)
{
    std::vector<ReportRow> rows;
    auto grid = grid_for(config, t);
    if (grid.empty())
        grid.push_back(0);
    for (u64 N : grid) {
        rows.push_back(key_row(config, p, t, N));
        rows.back().status = status;
    }
    return rows;
}

double ratio(double num, double den) { return num / den; }

} // namespace

void SweepConfig::validate() const
{
    if (!(grid_ratio > 1.0))
        throw PreconditionError("sweep: grid ratio must exceed 1");
    if (primes.empty() && prime_max != 0 && prime_max < prime_min)
        throw PreconditionError("sweep: empty prime range");
    for (u64 p : primes) {
        if (p < 3 || !is_prime(p))
            throw PreconditionError("sweep: " + std::to_string(p) + " is not an odd prime");
    }
    if (primes.empty() && prime_max != 0 && prime_min < 3)
        throw PreconditionError("sweep: prime range must start at 3 or above");
    if (std::ranges::any_of(orders, [](u64 t) { return t == 0; }))
        throw PreconditionError("sweep: orders must be positive");
    if (lambdas.mode == LambdaMode::sampled && lambdas.samples == 0)
        throw PreconditionError("sweep: sampled mode needs a positive sample count");
    if (cell_time_budget < 0.0)
        throw PreconditionError("sweep: negative time budget");
}

std::vector<u64> SweepConfig::prime_list() const
{
    if (!primes.empty()) {
        auto out = primes;
        std::ranges::sort(out);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    std::vector<u64> out;
    for (u64 p = std::max<u64>(prime_min, 3); p <= prime_max; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

std::vector<u64> geometric_grid(u64 t, double ratio)
{
    std::vector<u64> grid;
    for (u64 v = 1; v <= t;) {
        grid.push_back(v);
        u64 const next = static_cast<u64>(std::ceil(static_cast<double>(v) * ratio - 1e-9));
        v = std::max(v + 1, next);
    }
    if (!grid.empty() && grid.back() != t)
        grid.push_back(t);
    return grid;
}

std::vector<u64> grid_for(SweepConfig const& config, u64 t)
{
    if (!config.n_grid)
        return geometric_grid(t, config.grid_ratio);
    std::vector<u64> grid;
    for (u64 N : *config.n_grid)
        if (N >= 1 && N <= t)
            grid.push_back(N);
    std::ranges::sort(grid);
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<std::string> slack_breaches(ReportRow const& r, SlackThresholds const& slack)
{
    std::vector<std::string> out;
    auto check = [&](std::optional<double> const& v, double limit, char const* name) {
        if (v && *v > limit)
            out.emplace_back(name);
    };
    check(r.korobov_ratio, slack.korobov, "korobov");
    check(r.theorem1_ratio, slack.theorem1, "thm1");
    check(r.theorem2_ratio, slack.theorem2, "thm2");
    check(r.lemma3_ratio1, slack.lemma3, "lemma3-1");
    check(r.lemma3_ratio2, slack.lemma3, "lemma3-2");
    return out;
}

std::vector<ReportRow> sweep_group(SweepConfig const& config, FieldCtx const& field, u64 t, unsigned inner_workers)
{
    Deadline deadline;
    if (config.cell_time_budget > 0.0) {
        deadline.enabled = true;
        deadline.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(config.cell_time_budget));
    }

    u64 const p = field.p();
    SubgroupCtx const ctx = element_of_order(field, t);
    auto const grid = grid_for(config, t);
    if (grid.empty())
        return {};

    auto const lambdas = select_lambdas(ctx, config.lambdas);
    auto const stats = scan_lambdas(ctx, grid, lambdas, inner_workers);
    if (deadline.expired())
        return status_rows(config, p, t, "timeout");

    std::optional<u64> energy;
    if (config.subgroup_energy) {
        ResidueSet const subgroup = PowerSet(ctx, 0, t).elements();
        if (p <= transform_modulus_limit)
            energy = additive_energy(subgroup, subgroup, EnergyBackend::transform);
        else if (t <= hashed_energy_max_t)
            energy = additive_energy(subgroup, subgroup, EnergyBackend::hashed);
    }
    if (deadline.expired())
        return status_rows(config, p, t, "timeout");

    std::optional<double> sigma;
    if (p <= config.sigma_cap)
        sigma = sigma_max(ctx, inner_workers).magnitude;
    if (deadline.expired())
        return status_rows(config, p, t, "timeout");

    auto const thm3 = bounds::theorem3_bound(p, t);
    double const korobov = bounds::korobov_bound(p);
    std::optional<bounds::RegimeValue> shkredov;
    if (energy)
        shkredov = bounds::shkredov_energy_bound(p, t);
    std::optional<std::pair<double, double>> lemma3;
    if (energy && t >= 2)
        lemma3 = bounds::lemma3_bounds(p, t, *energy);

    CountLimits const limits;
    std::vector<ReportRow> rows;
    rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        u64 const N = grid[k];
        if (deadline.expired()) {
            rows.push_back(key_row(config, p, t, N));
            rows.back().status = "timeout";
            continue;
        }
        ReportRow r = key_row(config, p, t, N);
        r.g = ctx.g();
        r.lambdas_evaluated = lambdas.size();
        r.argmax_lambda = stats[k].argmax_lambda;
        r.max_abs_s = stats[k].max_magnitude;
        if (config.lambdas.mode == LambdaMode::sampled)
            r.flags.emplace_back("sampled-lower-bound");

        if (N <= limits.hashed_max_pairs / N) {
            r.j_count = count_J(ctx, N, JBackend::hashed, limits);
            u64 all = 0;
            if (!__builtin_mul_overflow(p, *r.j_count, &all))
                r.fourth_moment_all = all;
        } else {
            r.flags.emplace_back("J-skipped");
        }
        if (config.lambdas.mode == LambdaMode::exhaustive) {
            r.sum_s4_nonzero = stats[k].sum_fourth;
            r.sum_s4_source = "direct";
        } else if (r.fourth_moment_all) {
            r.sum_s4_nonzero = static_cast<double>(*r.fourth_moment_all - N * N * N * N);
            r.sum_s4_source = "derived";
        }
        r.subgroup_energy = energy;

        r.korobov_bound = korobov;
        r.korobov_ratio = ratio(r.max_abs_s, korobov);
        r.theorem1_bound = bounds::theorem1_bound(p, t, N);
        if (r.sum_s4_nonzero)
            r.theorem1_ratio = ratio(*r.sum_s4_nonzero, *r.theorem1_bound);

        auto const thm2 = bounds::theorem2_bound(p, t, N);
        r.theorem2_bound = thm2.value;
        r.theorem2_regime = bounds::regime_label(thm2.regime);
        r.theorem2_ratio = ratio(r.max_abs_s, thm2.value);
        if (thm2.boundary)
            r.flags.emplace_back("boundary");

        r.theorem3_bound = thm3.value;
        r.theorem3_regime = bounds::regime_label(thm3.regime);
        r.theorem3_ratio = ratio(r.max_abs_s, thm3.value);
        if (thm3.regime_gap)
            r.flags.emplace_back("regime-gap");

        auto const cor = bounds::corollary_bound(p, N);
        r.corollary_bound = cor.value;
        r.corollary_regime = bounds::regime_label(cor.regime);
        r.corollary_ratio = ratio(r.max_abs_s, cor.value);

        if (shkredov) {
            r.shkredov_bound = shkredov->value;
            r.shkredov_regime = bounds::regime_label(shkredov->regime);
            r.shkredov_ratio = ratio(static_cast<double>(*energy), shkredov->value);
        }
        r.sigma_max = sigma;
        if (lemma3) {
            r.lemma3_bound1 = lemma3->first;
            r.lemma3_bound2 = lemma3->second;
            if (sigma) {
                r.lemma3_ratio1 = ratio(*sigma, lemma3->first);
                r.lemma3_ratio2 = ratio(*sigma, lemma3->second);
            }
        }
        for (auto const& b : slack_breaches(r, config.slack))
            r.flags.push_back("slack:" + b);
        rows.push_back(std::move(r));
    }
    return rows;
}

SweepSummary run_sweep(SweepConfig const& config, RowSink& sink)
{
    config.validate();

    std::vector<Job> jobs;
    for (u64 p : config.prime_list()) {
        for (u64 t : divisors(p - 1)) {
            if (config.orders.empty() || std::ranges::find(config.orders, t) != config.orders.end())
                jobs.push_back({p, t});
        }
    }

    SweepSummary summary;
    sink.begin(config);

    std::vector<std::optional<std::vector<ReportRow>>> done(jobs.size());
    std::size_t next_emit = 0;
    std::mutex emit_mutex;
    auto emit_ready = [&] {
        while (next_emit < done.size() && done[next_emit]) {
            for (auto const& row : *done[next_emit]) {
                sink.row(row);
                ++summary.rows;
                if (row.status == "timeout")
                    ++summary.timeouts;
                else if (row.status != "ok")
                    ++summary.errors;
                for (auto const& b : slack_breaches(row, config.slack)) {
                    ++summary.slack_breaches;
                    summary.breach_details.push_back(b + " p=" + std::to_string(row.p) + " t=" +
                                                     std::to_string(row.t) + " N=" + std::to_string(row.N));
                }
            }
            done[next_emit].reset();
            done[next_emit].emplace(); // keep the slot marked as emitted
            ++next_emit;
        }
    };

    std::atomic<std::size_t> next_job{0};
    auto worker = [&] {
        for (std::size_t i = next_job++; i < jobs.size(); i = next_job++) {
            std::vector<ReportRow> rows;
            try {
                rows = sweep_group(config, FieldCtx(jobs[i].p), jobs[i].t, 1);
            } catch (std::exception const& e) {
                rows = status_rows(config, jobs[i].p, jobs[i].t, std::string("error: ") + e.what());
            }
            std::lock_guard lock(emit_mutex);
            done[i] = std::move(rows);
            emit_ready();
        }
    };

    unsigned workers = config.workers == 0 ? default_workers() : config.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(jobs.size(), 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    sink.end();
    return summary;
}

} // namespace powsum::harness
