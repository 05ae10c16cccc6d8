#pragma once

#include "powsum/expsum.hpp"
#include "powsum/modmath.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace powsum::harness {

/// Alarm thresholds on measured/bound ratios. They stand in for the unknown
/// implied constants, so they are configuration rather than mathematics.
struct SlackThresholds {
    double korobov = 2.0;
    double theorem1 = 10.0;
    double theorem2 = 10.0;
    double lemma3 = 10.0;
};

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<u64> primes; // explicit list; when empty, every prime in [prime_min, prime_max]
    u64 prime_min = 3;
    u64 prime_max = 0;

    std::vector<u64> orders; // restrict to these divisors t of p-1 (empty: all divisors)

    std::optional<std::vector<u64>> n_grid; // explicit N values; nullopt selects the geometric grid
    double grid_ratio = 2.0;

    LambdaSelection lambdas = LambdaSelection::exhaustive();

    u64 sigma_cap = 499;          // max |sigma(a, c)| is computed for p <= sigma_cap
    bool subgroup_energy = true;  // E+(<g>, <g>)
    SlackThresholds slack;
    double cell_time_budget = 0.0; // seconds per (p, t) job; 0 disables
    unsigned workers = 0;

    OutputFormat format = OutputFormat::csv;
    std::string path; // empty: standard output

    /// Throws PreconditionError on an unusable configuration.
    void validate() const;
    std::vector<u64> prime_list() const;
};

/// 1, r, r^2, ... (integer, strictly increasing) capped at t, with t appended.
std::vector<u64> geometric_grid(u64 t, double ratio);

/// The N values used for a given order t (explicit grids are clipped to [1, t]).
std::vector<u64> grid_for(SweepConfig const& config, u64 t);

struct ReportRow {
    u64 p = 0;
    u64 t = 0;
    u64 g = 0;
    u64 N = 0;
    std::string lambda_mode;
    u64 lambdas_evaluated = 0;
    u64 argmax_lambda = 0;
    double max_abs_s = 0.0;
    std::optional<double> sum_s4_nonzero;
    std::string sum_s4_source; // "direct" | "derived" | ""
    std::optional<u64> j_count;
    std::optional<u64> fourth_moment_all;
    std::optional<u64> subgroup_energy;

    std::optional<double> korobov_bound, korobov_ratio;
    std::optional<double> theorem1_bound, theorem1_ratio;
    std::optional<double> theorem2_bound, theorem2_ratio;
    std::string theorem2_regime;
    std::optional<double> theorem3_bound, theorem3_ratio;
    std::string theorem3_regime;
    std::optional<double> corollary_bound, corollary_ratio;
    std::string corollary_regime;
    std::optional<double> shkredov_bound, shkredov_ratio;
    std::string shkredov_regime;
    std::optional<double> sigma_max;
    std::optional<double> lemma3_bound1, lemma3_ratio1;
    std::optional<double> lemma3_bound2, lemma3_ratio2;

    std::vector<std::string> flags;
    std::string status = "ok";
};

/// Receives rows in (p, t, N) order.
class RowSink {
public:
    virtual ~RowSink() = default;
    virtual void begin(SweepConfig const& config) = 0;
    virtual void row(ReportRow const& row) = 0;
    virtual void end() = 0;
};

struct SweepSummary {
    u64 rows = 0;
    u64 errors = 0;
    u64 timeouts = 0;
    u64 slack_breaches = 0;
    std::vector<std::string> breach_details;
};

/// Computes every row for one (p, t) pair.
std::vector<ReportRow> sweep_group(SweepConfig const& config, FieldCtx const& field, u64 t,
                                   unsigned inner_workers = 1);

/// Runs every (p, t) job on a worker pool; the sink sees rows in sorted order
/// as soon as all earlier jobs are done.
SweepSummary run_sweep(SweepConfig const& config, RowSink& sink);

/// Records ratio breaches of `row` against the configured slack.
std::vector<std::string> slack_breaches(ReportRow const& row, SlackThresholds const& slack);

} // namespace powsum::harness
