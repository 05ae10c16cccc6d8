// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "oracle.hpp"

#include "powsum/addcomb.hpp"
#include "powsum/bounds.hpp"
#include "powsum/expsum.hpp"
#include "powsum/harness/report.hpp"
#include "powsum/harness/sweep.hpp"
#include "powsum/harness/verify.hpp"
#include "powsum/residue_set.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace powsum;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, char const* title, std::function<Outcome()> const& body)
{
    auto const start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (std::exception const& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Criteria 1 and 2 share one scan over the grid.
struct MomentScan {
    u64 cells = 0;
    u64 fourth_bad = 0;
    u64 parseval_bad = 0;
    double fourth_worst = 0.0;
    double parseval_worst = 0.0;
};

MomentScan const& moment_scan()
{
    static MomentScan const scan = [] {
        MomentScan s;
        for (u64 p : harness::primes_up_to(499)) {
            FieldCtx const field(p);
            auto const lambdas = select_lambdas(SubgroupCtx(field, 1), LambdaSelection::exhaustive());
            for (u64 t : divisors(p - 1)) {
                SubgroupCtx const ctx = element_of_order(field, t);
                std::vector<u64> grid;
                for (u64 N = 1; N <= std::min<u64>(t, 40); ++N)
                    grid.push_back(N);
                for (auto const& st : scan_lambdas(ctx, grid, lambdas)) {
                    double const n = static_cast<double>(st.N);
                    double const fourth = n * n * n * n + st.sum_fourth; // lambda = 0 contributes N^4
                    double const pj = static_cast<double>(p) * static_cast<double>(count_J(ctx, st.N));
                    double const second = n * n + st.sum_sq;
                    double const pn = static_cast<double>(p) * n;
                    double const e4 = std::abs(fourth - pj) / pj;
                    double const e2 = std::abs(second - pn) / pn;
                    s.fourth_worst = std::max(s.fourth_worst, e4);
                    s.parseval_worst = std::max(s.parseval_worst, e2);
                    s.fourth_bad += !(e4 <= 1e-6);
                    s.parseval_bad += !(e2 <= 1e-9);
                    ++s.cells;
                }
            }
        }
        return s;
    }();
    return scan;
}

Outcome from_suite(harness::SuiteResult const& r)
{
    std::string detail = std::to_string(r.passed) + "/" + std::to_string(r.checks) + " checks";
    if (!r.failures.empty())
        detail += "; first: " + r.failures.front();
    return {r.ok(), detail};
}

struct Tally {
    int inputs = 0;
    int bad = 0;
    double worst = 0.0;
    void check(double value, oracle::big const& expected, bool regime_ok = true)
    {
        double const e = oracle::rel(value, expected);
        worst = std::max(worst, e);
        bad += !(e <= 1e-12) || !regime_ok;
    }
};

Outcome formula_evaluators()
{
    std::mt19937_64 rng(2024);
    auto random_prime = [&] {
        u64 const hi = u64{1} << (rng() % 34 + 3);
        u64 p = rng() % hi + 3;
        while (!is_prime(p))
            ++p;
        return p;
    };
    auto random_divisor = [&](u64 n) {
        auto const d = divisors(n);
        return d[rng() % d.size()];
    };
    auto log_uniform = [&](u64 hi) {
        double const u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        return std::clamp<u64>(static_cast<u64>(std::exp(u * std::log(static_cast<double>(hi)))), 1, hi);
    };

    std::vector<std::pair<char const*, Tally>> tallies;
    auto run = [&](char const* name, std::function<void(Tally&)> const& one) {
        Tally t;
        for (int i = 0; i < 100; ++i) {
            one(t);
            ++t.inputs;
        }
        tallies.emplace_back(name, t);
    };

    run("korobov", [&](Tally& t) {
        u64 const p = random_prime();
        t.check(bounds::korobov_bound(p), oracle::korobov(p));
    });
    run("theorem1", [&](Tally& t) {
        u64 const p = random_prime(), tt = random_divisor(p - 1), N = log_uniform(tt);
        t.check(bounds::theorem1_bound(p, tt, N), oracle::theorem1(p, tt, N));
    });
    run("theorem2", [&](Tally& t) {
        u64 const p = random_prime(), tt = random_divisor(p - 1), N = log_uniform(tt);
        auto const v = bounds::theorem2_bound(p, tt, N);
        auto const o = oracle::theorem2(p, tt, N);
        t.check(v.value, o.value, v.regime == o.regime);
    });
    run("theorem3", [&](Tally& t) {
        u64 const p = random_prime(), tt = random_divisor(p - 1);
        auto const v = bounds::theorem3_bound(p, tt);
        auto const o = oracle::theorem3(p, tt);
        t.check(v.value, o.value, v.regime == o.regime);
    });
    run("corollary", [&](Tally& t) {
        u64 const p = random_prime(), N = log_uniform(p);
        auto const v = bounds::corollary_bound(p, N);
        auto const o = oracle::corollary(p, N);
        t.check(v.value, o.value, v.regime == o.regime);
    });
    run("lemma1", [&](Tally& t) {
        u64 const tt = log_uniform(u64{1} << 30), M = log_uniform(tt);
        u64 const k1 = rng() % M + 1, k2 = rng() % M + 1;
        double const d1 = static_cast<double>(k1) / static_cast<double>(M);
        double const d2 = static_cast<double>(k2) / static_cast<double>(M);
        t.check(bounds::lemma1_bound(M, tt, d1, d2), oracle::lemma1(M, tt, k1, k2));
    });
    run("lemma2_rhs", [&](Tally& t) {
        u64 const p = random_prime() % 100000 + 2, a = rng() % 500 + 1, b = rng() % 500 + 1;
        u64 const ea = a * a + rng() % (a * a * a - a * a + 1), eb = b * b + rng() % (b * b * b - b * b + 1);
        t.check(bounds::lemma2_rhs(p, a, b, ea, eb), oracle::lemma2_rhs(p, a, b, ea, eb));
    });
    run("lemma3", [&](Tally& t) {
        u64 p = random_prime(), tt = random_divisor(p - 1);
        while (tt < 2)
            tt = random_divisor(p - 1);
        u64 const E = tt * tt + rng() % (tt * tt * (std::min<u64>(tt, 1000000) - 1) + 1);
        auto const [b1, b2] = bounds::lemma3_bounds(p, tt, E);
        auto const [o1, o2] = oracle::lemma3(p, tt, E);
        t.check(b1, o1);
        t.check(b2, o2);
    });
    run("shkredov", [&](Tally& t) {
        u64 const p = random_prime(), tt = random_divisor(p - 1);
        auto const v = bounds::shkredov_energy_bound(p, tt);
        auto const o = oracle::shkredov(p, tt);
        t.check(v.value, o.value, v.regime == o.regime);
    });

    bool ok = true;
    std::string detail;
    double worst = 0.0;
    for (auto const& [name, t] : tallies) {
        worst = std::max(worst, t.worst);
        if (t.bad) {
            ok = false;
            detail += std::string(name) + " " + std::to_string(t.bad) + " mismatches; ";
        }
    }

    // regime 1/2 agreement at N = sqrt(t)
    double continuity = 0.0;
    for (int i = 0; i < 100; ++i) {
        double const tt = std::exp(std::uniform_real_distribution<double>(0.0, 40.0)(rng));
        double const p = tt * std::exp(std::uniform_real_distribution<double>(0.0, 20.0)(rng));
        double const n = std::sqrt(tt);
        continuity = std::max(continuity, rel(bounds::theorem2_branch(1, p, tt, n) /
                                                  bounds::theorem2_branch(2, p, tt, n), 1.0));
    }
    ok = ok && continuity <= 1e-12;

    // top regime of theorem3_bound against korobov_bound, bit for bit
    int regime4 = 0, differ = 0;
    for (u64 p : harness::primes_up_to(20000)) {
        if (p < 3)
            continue;
        u64 const t = p - 1;
        auto const v = bounds::theorem3_bound(p, t);
        if (v.regime != 4)
            continue;
        ++regime4;
        differ += v.value != bounds::korobov_bound(p);
    }
    ok = ok && regime4 > 0 && differ == 0;

    detail += "9 evaluators x 100 inputs, worst rel err " + num(worst) + "; continuity err " + num(continuity) +
              "; regime-4 cases " + std::to_string(regime4) + ", bitwise mismatches " + std::to_string(differ);
    return {ok, detail};
}

Outcome ratio_regression()
{
    harness::SweepConfig c;
    c.prime_min = 3;
    c.prime_max = 2003;
    c.sigma_cap = 499;
    harness::CollectingSink sink;
    auto const summary = harness::run_sweep(c, sink);

    double k = 0, t1 = 0, t2 = 0, l3 = 0;
    u64 sigma_rows = 0;
    for (auto const& r : sink.rows) {
        k = std::max(k, r.korobov_ratio.value_or(0));
        t1 = std::max(t1, r.theorem1_ratio.value_or(0));
        t2 = std::max(t2, r.theorem2_ratio.value_or(0));
        l3 = std::max({l3, r.lemma3_ratio1.value_or(0), r.lemma3_ratio2.value_or(0)});
        sigma_rows += r.sigma_max.has_value();
    }
    bool const ok = summary.slack_breaches == 0 && summary.errors == 0 && summary.timeouts == 0 &&
                    k <= c.slack.korobov && t1 <= c.slack.theorem1 && t2 <= c.slack.theorem2 &&
                    l3 <= c.slack.lemma3 && sigma_rows > 0;
    std::string detail = std::to_string(summary.rows) + " rows; max ratios korobov " + num(k) + " (<= " +
                         num(c.slack.korobov) + "), thm1 " + num(t1) + " (<= " + num(c.slack.theorem1) + "), thm2 " +
                         num(t2) + " (<= " + num(c.slack.theorem2) + "), lemma3 " + num(l3) + " (<= " +
                         num(c.slack.lemma3) + ", " + std::to_string(sigma_rows) + " rows with sigma)";
    if (!summary.breach_details.empty())
        detail += "; first breach: " + summary.breach_details.front();
    return {ok, detail};
}

} // namespace

int main()
{
    criterion(1, "fourth-moment identity, p <= 499, N <= min(t, 40), rel 1e-6", [] {
        auto const& s = moment_scan();
        return Outcome{s.fourth_bad == 0 && s.cells > 0,
                       std::to_string(s.cells) + " cells, worst rel err " + num(s.fourth_worst)};
    });

    criterion(2, "Parseval, same grid, rel 1e-9", [] {
        auto const& s = moment_scan();
        return Outcome{s.parseval_bad == 0 && s.cells > 0,
                       std::to_string(s.cells) + " cells, worst rel err " + num(s.parseval_worst)};
    });

    criterion(3, "energy backends agree, 200 pairs, p <= 4099, |A|,|B| <= 150",
              [] { return from_suite(harness::verify_backends(4099, 200, 150, 1)); });

    criterion(4, "bilinear sum inequality with constant 1, 500 pairs, p <= 499",
              [] { return from_suite(harness::verify_lemma2(499, 500, 2)); });

    criterion(5, "complete sums equal -1, 50 primes <= 1e4 x 10 lambdas, abs 1e-8", [] {
        auto const r = harness::verify_complete_sums(10000, 50, 10, 3);
        Outcome o = from_suite(r);
        o.pass = o.pass && r.checks == 500;
        return o;
    });

    criterion(6, "desk instance p=7, g=2, N=3", [] {
        SubgroupCtx const ctx(FieldCtx(7), 2);
        double const mag = eval_sum(ctx, 1, 3).magnitude();
        u64 const j_naive = count_J(ctx, 3, JBackend::naive);
        u64 const j_hash = count_J(ctx, 3, JBackend::hashed);
        auto const A = ResidueSet::from_values(7, {1, 2, 4});
        u64 const e = additive_energy(A, A);
        auto const m = fourth_moment(ctx, 3);
        // brute-force oracle values
        double const o_mag = static_cast<double>(std::abs(oracle::sum(7, 2, 1, 3)));
        u64 const o_j = oracle::J(7, 2, 3);
        u64 const o_e = oracle::energy({1, 2, 4}, {1, 2, 4}, 7);
        bool const ok = std::abs(mag - std::sqrt(2.0)) <= 1e-12 && std::abs(o_mag - std::sqrt(2.0)) <= 1e-12 &&
                        j_naive == 15 && j_hash == 15 && o_j == 15 && e == 15 && o_e == 15 &&
                        m.fourth_moment_all == 105 && 7 * o_j == 105;
        char buf[160];
        std::snprintf(buf, sizeof buf, "|S(1,3)| = %.15f, J = %llu, E+ = %llu, sum |S|^4 = %llu", mag,
                      static_cast<unsigned long long>(j_hash), static_cast<unsigned long long>(e),
                      static_cast<unsigned long long>(m.fourth_moment_all));
        return Outcome{ok, buf};
    });

    criterion(7, "bound evaluators vs 100-digit oracle, rel 1e-12", formula_evaluators);

    criterion(8, "ratio regression over primes <= 2003", ratio_regression);

    criterion(9, "power-set sumset report, 50 configurations, p <= 1e4", [] {
        auto const a = harness::lemma1_report(50, 10000, 4);
        auto const b = harness::lemma1_report(50, 10000, 4);
        bool same = a.entries.size() == b.entries.size() && a.min_ratio == b.min_ratio;
        for (std::size_t i = 0; same && i < a.entries.size(); ++i)
            same = a.entries[i].sumset_size == b.entries[i].sumset_size && a.entries[i].ratio == b.entries[i].ratio;
        std::printf("  p,t,M,delta1,delta2,|A+B|,bound,ratio\n");
        for (auto const& e : a.entries)
            std::printf("  %llu,%llu,%llu,%s,%s,%llu,%s,%s\n", static_cast<unsigned long long>(e.p),
                        static_cast<unsigned long long>(e.t), static_cast<unsigned long long>(e.M),
                        harness::format_double(e.delta1).c_str(), harness::format_double(e.delta2).c_str(),
                        static_cast<unsigned long long>(e.sumset_size), harness::format_double(e.bound).c_str(),
                        harness::format_double(e.ratio).c_str());
        return Outcome{same && a.entries.size() == 50,
                       "min ratio " + harness::format_double(a.min_ratio) + ", deterministic: " + (same ? "yes" : "no")};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
