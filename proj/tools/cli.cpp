#include "cli.hpp"

#include "powsum/addcomb.hpp"
#include "powsum/bounds.hpp"
#include "powsum/error.hpp"
#include "powsum/expsum.hpp"
#include "powsum/harness/report.hpp"
#include "powsum/harness/sweep.hpp"
#include "powsum/harness/verify.hpp"
#include "powsum/residue_set.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace powsum::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed 15 decimals with negative zero folded to zero.
std::string fixed15(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15f", x);
    std::string s = buf;
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

std::string complex_text(std::complex<double> z)
{
    std::string im = fixed15(z.imag());
    char const sign = im.starts_with("-") ? '-' : '+';
    if (sign == '-')
        im.erase(0, 1);
    return fixed15(z.real()) + " " + sign + " " + im + "i";
}

/// Key/value output, printed as "key = value" lines or one JSON object.
class Output {
public:
    void add(std::string const& key, std::string const& text, ordered_json value)
    {
        lines_.emplace_back(key, text);
        json_[key] = std::move(value);
    }
    void add(std::string const& key, u64 v) { add(key, std::to_string(v), v); }
    void add_real(std::string const& key, double v) { add(key, fixed15(v), std::stod(harness::format_double(v))); }
    void add_text(std::string const& key, std::string const& v) { add(key, v, v); }

    void print(std::ostream& out, bool as_json) const
    {
        if (as_json) {
            out << json_.dump() << '\n';
            return;
        }
        for (auto const& [k, v] : lines_)
            out << k << " = " << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
    ordered_json json_ = ordered_json::object();
};

struct SubgroupOptions {
    u64 p = 0;
    std::optional<u64> g;
    std::optional<u64> t;

    void attach(CLI::App* cmd, bool need_subgroup = true)
    {
        cmd->add_option("--p", p, "prime modulus")->required();
        if (need_subgroup) {
            cmd->add_option("--g", g, "element of F_p^* (default: order --t, else a primitive root)");
            cmd->add_option("--t", t, "multiplicative order; picks g = r^((p-1)/t)");
        }
    }

    SubgroupCtx resolve() const
    {
        FieldCtx const field(p);
        if (g) {
            SubgroupCtx ctx(field, *g);
            if (t && *t != ctx.t())
                throw PreconditionError("g=" + std::to_string(*g) + " has order " + std::to_string(ctx.t()) +
                                        ", not t=" + std::to_string(*t));
            return ctx;
        }
        if (t)
            return element_of_order(field, *t);
        return SubgroupCtx(field, primitive_root(field));
    }
};

std::vector<u64> parse_list(std::string const& text)
{
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto const b = item.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        auto const e = item.find_last_not_of(" \t");
        std::string const token = item.substr(b, e - b + 1);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(token, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used != token.size() || token.starts_with("-"))
            throw UsageError("not a nonnegative integer: '" + token + "'");
        out.push_back(v);
    }
    return out;
}

EnergyBackend parse_energy_backend(std::string const& name)
{
    if (name == "naive")
        return EnergyBackend::naive;
    if (name == "hash" || name == "hashed")
        return EnergyBackend::hashed;
    if (name == "transform")
        return EnergyBackend::transform;
    throw UsageError("unknown backend '" + name + "'");
}

void add_common_tail(Output& o, SubgroupCtx const& ctx)
{
    o.add("p", ctx.p());
    o.add("g", ctx.g());
    o.add("t", ctx.t());
}

// ---------------------------------------------------------------------------

struct Commands {
    CLI::App app{"powsum: incomplete exponential sums over powers modulo a prime"};

    std::string out_format = "text";

    SubgroupOptions sum_sg;
    u64 sum_lambda = 1;
    u64 sum_N = 0;

    SubgroupOptions sigma_sg;
    u64 sigma_a = 0;
    u64 sigma_c = 1;
    bool sigma_all = false;

    SubgroupOptions max_sg;
    u64 max_N = 0;
    std::string max_mode = "exhaustive";
    u64 max_samples = 1000;
    u64 max_seed = 1;

    SubgroupOptions m4_sg;
    u64 m4_N = 0;
    std::string m4_backend = "hash";

    SubgroupOptions energy_sg;
    std::string energy_A, energy_B;
    std::optional<u64> energy_L, energy_M;
    std::string energy_backend = "hash";

    u64 sumset_p = 0;
    std::string sumset_A, sumset_B;
    std::string sumset_op = "sum";

    u64 bounds_p = 0;
    std::optional<u64> bounds_t, bounds_N, bounds_M, bounds_energy;
    double bounds_delta1 = 1.0, bounds_delta2 = 1.0;

    std::string verify_suite = "all";
    u64 verify_cap = 499;
    u64 verify_seed = 1;

    std::string sweep_config_path;
    std::string sweep_primes;
    u64 sweep_pmin = 3;
    u64 sweep_pmax = 0;
    std::string sweep_orders;
    std::optional<std::string> sweep_grid;
    double sweep_ratio = 2.0;
    std::string sweep_mode = "exhaustive";
    u64 sweep_samples = 1000;
    u64 sweep_seed = 1;
    std::string sweep_out = "csv";
    std::string sweep_path;
    u64 sweep_sigma_cap = 499;
    double slack_korobov = 2.0, slack_thm1 = 10.0, slack_thm2 = 10.0, slack_lemma3 = 10.0;
    double sweep_budget = 0.0;
    unsigned sweep_workers = 0;
    bool sweep_no_timestamp = false;

    CLI::App* sum = nullptr;
    CLI::App* sigma = nullptr;
    CLI::App* maxsum = nullptr;
    CLI::App* moment4 = nullptr;
    CLI::App* energy = nullptr;
    CLI::App* sumset_cmd = nullptr;
    CLI::App* bounds_cmd = nullptr;
    CLI::App* verify = nullptr;
    CLI::App* sweep = nullptr;

    Commands()
    {
        app.require_subcommand(1);
        auto fmt_check = CLI::IsMember({"text", "json"});

        sum = app.add_subcommand("sum", "S(lambda, N) = sum_{n=1}^{N} e_p(lambda g^n)");
        sum_sg.attach(sum);
        sum->add_option("--lambda", sum_lambda, "lambda in [0, p-1]");
        sum->add_option("--N", sum_N, "number of terms, N <= t")->required();
        sum->add_option("--out", out_format)->check(fmt_check);

        sigma = app.add_subcommand("sigma", "sigma(a, c) = sum_{n=1}^{t} e_t(a n) e_p(c g^n)");
        sigma_sg.attach(sigma);
        sigma->add_option("--a", sigma_a, "a in [0, t-1]");
        sigma->add_option("--c", sigma_c, "c in [0, p-1]");
        sigma->add_flag("--max", sigma_all, "maximise |sigma| over a and c in F_p^*");
        sigma->add_option("--out", out_format)->check(fmt_check);

        maxsum = app.add_subcommand("maxsum", "max over lambda of |S(lambda, N)|");
        max_sg.attach(maxsum);
        maxsum->add_option("--N", max_N)->required();
        maxsum->add_option("--mode", max_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
        maxsum->add_option("--samples", max_samples);
        maxsum->add_option("--seed", max_seed);
        maxsum->add_option("--out", out_format)->check(fmt_check);

        moment4 = app.add_subcommand("moment4", "fourth moment of S over lambda via J(g, N)");
        m4_sg.attach(moment4);
        moment4->add_option("--N", m4_N)->required();
        moment4->add_option("--backend", m4_backend)->check(CLI::IsMember({"naive", "hash"}));
        moment4->add_option("--out", out_format)->check(fmt_check);

        energy = app.add_subcommand("energy", "additive energy E+(A, B)");
        energy_sg.attach(energy);
        energy->add_option("--A", energy_A, "comma-separated residues (default: power set)");
        energy->add_option("--B", energy_B, "comma-separated residues (default: A)");
        energy->add_option("--L", energy_L, "power set offset");
        energy->add_option("--M", energy_M, "power set length (default: t)");
        energy->add_option("--backend", energy_backend)->check(CLI::IsMember({"naive", "hash", "transform"}));
        energy->add_option("--out", out_format)->check(fmt_check);

        sumset_cmd = app.add_subcommand("sumset", "set operations in F_p");
        sumset_cmd->add_option("--p", sumset_p)->required();
        sumset_cmd->add_option("--A", sumset_A)->required();
        sumset_cmd->add_option("--B", sumset_B);
        sumset_cmd->add_option("--op", sumset_op)
            ->check(CLI::IsMember({"sum", "difference", "product", "ratio", "diffquot"}));
        sumset_cmd->add_option("--out", out_format)->check(fmt_check);

        bounds_cmd = app.add_subcommand("bounds", "evaluate the bound formulas");
        bounds_cmd->add_option("--p", bounds_p)->required();
        bounds_cmd->add_option("--t", bounds_t);
        bounds_cmd->add_option("--N", bounds_N);
        bounds_cmd->add_option("--M", bounds_M);
        bounds_cmd->add_option("--delta1", bounds_delta1);
        bounds_cmd->add_option("--delta2", bounds_delta2);
        bounds_cmd->add_option("--energy", bounds_energy, "E+(A, A) for the energy-based bounds");
        bounds_cmd->add_option("--out", out_format)->check(fmt_check);

        verify = app.add_subcommand("verify", "run invariant suites");
        verify->add_option("--suite", verify_suite)
            ->check(CLI::IsMember({"identity", "backend", "lemma2", "complete", "lemma1", "all"}));
        verify->add_option("--cap", verify_cap, "largest prime examined");
        verify->add_option("--seed", verify_seed);

        sweep = app.add_subcommand("sweep", "parameter sweep with CSV/JSON report");
        sweep->add_option("--config", sweep_config_path, "JSON sweep configuration");
        sweep->add_option("--primes", sweep_primes, "comma-separated primes");
        sweep->add_option("--pmin", sweep_pmin);
        sweep->add_option("--pmax", sweep_pmax);
        sweep->add_option("--p", sweep_primes, "single prime (alias of --primes)");
        sweep->add_option("--t", sweep_orders, "comma-separated orders t | p-1 to keep");
        sweep->add_option("--N", sweep_grid, "comma-separated N grid ('' for none; default geometric)");
        sweep->add_option("--grid-ratio", sweep_ratio);
        sweep->add_option("--mode", sweep_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
        sweep->add_option("--samples", sweep_samples);
        sweep->add_option("--seed", sweep_seed);
        sweep->add_option("--out", sweep_out)->check(CLI::IsMember({"csv", "json"}));
        sweep->add_option("--path", sweep_path, "output file (default: stdout)");
        sweep->add_option("--sigma-cap", sweep_sigma_cap);
        sweep->add_option("--slack-korobov", slack_korobov);
        sweep->add_option("--slack-thm1", slack_thm1);
        sweep->add_option("--slack-thm2", slack_thm2);
        sweep->add_option("--slack-lemma3", slack_lemma3);
        sweep->add_option("--cell-budget", sweep_budget, "seconds per (p, t) job; 0 = unlimited");
        sweep->add_option("--workers", sweep_workers);
        sweep->add_flag("--no-timestamp", sweep_no_timestamp);
    }

    bool json() const { return out_format == "json"; }

    int run_sum(std::ostream& out)
    {
        SubgroupCtx const ctx = sum_sg.resolve();
        auto const s = eval_sum(ctx, sum_lambda, sum_N);
        Output o;
        add_common_tail(o, ctx);
        o.add("lambda", sum_lambda);
        o.add("N", sum_N);
        o.add("S", complex_text(s.value()), {{"re", s.real()}, {"im", s.imag()}});
        o.add_real("re", s.real());
        o.add_real("im", s.imag());
        o.add_real("|S|", s.magnitude());
        o.print(out, json());
        return success;
    }

    int run_sigma(std::ostream& out)
    {
        SubgroupCtx const ctx = sigma_sg.resolve();
        Output o;
        add_common_tail(o, ctx);
        if (sigma_all) {
            auto const m = sigma_max(ctx);
            o.add("a", m.a);
            o.add("c", m.c);
            o.add_real("max|sigma|", m.magnitude);
        } else {
            auto const s = sigma_hybrid(ctx, sigma_a, sigma_c);
            o.add("a", sigma_a);
            o.add("c", sigma_c);
            o.add("sigma", complex_text(s.value()), {{"re", s.real()}, {"im", s.imag()}});
            o.add_real("|sigma|", s.magnitude());
        }
        o.print(out, json());
        return success;
    }

    int run_maxsum(std::ostream& out)
    {
        SubgroupCtx const ctx = max_sg.resolve();
        auto const sel = max_mode == "exhaustive" ? LambdaSelection::exhaustive()
                                                  : LambdaSelection::sampled(max_samples, max_seed);
        auto const m = max_over_lambda(ctx, max_N, sel);
        Output o;
        add_common_tail(o, ctx);
        o.add("N", max_N);
        o.add_text("mode", max_mode);
        o.add("lambdas_evaluated", m.evaluated);
        o.add("lambda*", m.lambda);
        o.add("S", complex_text(m.value), {{"re", m.value.real()}, {"im", m.value.imag()}});
        o.add_real("max|S|", m.magnitude);
        o.add("lower_bound", m.lower_bound ? "true" : "false", m.lower_bound);
        o.print(out, json());
        return success;
    }

    int run_moment4(std::ostream& out)
    {
        SubgroupCtx const ctx = m4_sg.resolve();
        Output o;
        add_common_tail(o, ctx);
        o.add("N", m4_N);
        if (m4_backend == "naive") {
            u64 const j = count_J(ctx, m4_N, JBackend::naive);
            o.add("J", j);
            o.add("fourth_moment_all", ctx.p() * j);
        } else {
            auto const m = fourth_moment(ctx, m4_N);
            o.add("J", m.j_count);
            o.add("fourth_moment_all", m.fourth_moment_all);
            o.add("fourth_moment_nonzero_derived", m.derived_nonzero);
            if (m.direct_nonzero)
                o.add_real("fourth_moment_nonzero_direct", *m.direct_nonzero);
        }
        o.print(out, json());
        return success;
    }

    int run_energy(std::ostream& out)
    {
        EnergyBackend const backend = parse_energy_backend(energy_backend);
        ResidueSet A, B;
        Output o;
        if (!energy_A.empty()) {
            auto const a = parse_list(energy_A);
            A = ResidueSet::from_values(energy_sg.p, a);
            B = energy_B.empty() ? A : ResidueSet::from_values(energy_sg.p, parse_list(energy_B));
            if (!is_prime(energy_sg.p))
                throw PreconditionError("p=" + std::to_string(energy_sg.p) + " is not prime");
            o.add("p", energy_sg.p);
        } else {
            SubgroupCtx const ctx = energy_sg.resolve();
            u64 const M = energy_M.value_or(ctx.t());
            A = PowerSet(ctx, energy_L.value_or(0), M).elements();
            B = energy_B.empty() ? A : ResidueSet::from_values(ctx.p(), parse_list(energy_B));
            add_common_tail(o, ctx);
            o.add("L", energy_L.value_or(0));
            o.add("M", M);
        }
        o.add("|A|", A.size());
        o.add("|B|", B.size());
        o.add_text("backend", energy_backend);
        o.add("E+", additive_energy(A, B, backend));
        o.print(out, json());
        return success;
    }

    int run_sumset(std::ostream& out)
    {
        if (!is_prime(sumset_p))
            throw PreconditionError("p=" + std::to_string(sumset_p) + " is not prime");
        ResidueSet const A = ResidueSet::from_values(sumset_p, parse_list(sumset_A));
        ResidueSet const B = sumset_B.empty() ? A : ResidueSet::from_values(sumset_p, parse_list(sumset_B));
        ResidueSet result;
        if (sumset_op == "sum")
            result = sumset(A, B);
        else if (sumset_op == "difference")
            result = difference_set(A, B);
        else if (sumset_op == "product")
            result = product_set(A, B);
        else if (sumset_op == "ratio")
            result = ratio_set(A, B);
        else
            result = difference_quotient_set(A);
        Output o;
        o.add("p", sumset_p);
        o.add_text("op", sumset_op);
        o.add("size", result.size());
        auto const elems = result.elements();
        std::string text;
        for (std::size_t i = 0; i < elems.size(); ++i)
            text += (i ? "," : "") + std::to_string(elems[i]);
        o.add("elements", "{" + text + "}", elems);
        if (sumset_op == "ratio" && std::ranges::none_of(B.elements(), [](u64 x) { return x != 0; }))
            o.add_text("note", "B has no nonzero element; ratio set is empty");
        o.print(out, json());
        return success;
    }

    int run_bounds(std::ostream& out)
    {
        u64 const p = bounds_p;
        Output o;
        o.add("p", p);
        o.add_text("log", "natural; o(1) dropped; implied constants 1");
        auto add_regime = [&](std::string const& key, bounds::RegimeValue const& v) {
            std::string text = harness::format_double(v.value) + " (" + bounds::regime_label(v.regime);
            if (v.boundary)
                text += ", boundary";
            if (v.regime_gap)
                text += ", regime-gap";
            text += ")";
            o.add(key, text,
                  {{"value", v.value}, {"regime", v.regime}, {"boundary", v.boundary}, {"regime_gap", v.regime_gap}});
        };
        o.add("korobov", harness::format_double(bounds::korobov_bound(p)), bounds::korobov_bound(p));
        if (bounds_N)
            add_regime("corollary", bounds::corollary_bound(p, *bounds_N));
        if (bounds_t) {
            u64 const t = *bounds_t;
            add_regime("theorem3", bounds::theorem3_bound(p, t));
            add_regime("shkredov_energy", bounds::shkredov_energy_bound(p, t));
            if (bounds_N) {
                double const t1 = bounds::theorem1_bound(p, t, *bounds_N);
                o.add("theorem1", harness::format_double(t1), t1);
                add_regime("theorem2", bounds::theorem2_bound(p, t, *bounds_N));
            }
            if (bounds_M) {
                double const l1 = bounds::lemma1_bound(*bounds_M, t, bounds_delta1, bounds_delta2);
                o.add("lemma1", harness::format_double(l1), l1);
            }
            if (bounds_energy) {
                auto const [b1, b2] = bounds::lemma3_bounds(p, t, *bounds_energy);
                o.add("lemma3", harness::format_double(b1) + ", " + harness::format_double(b2), {b1, b2});
            }
        }
        o.print(out, json());
        return success;
    }

    int run_verify(std::ostream& out, std::ostream& err)
    {
        std::vector<harness::SuiteResult> results;
        auto want = [&](char const* name) { return verify_suite == "all" || verify_suite == name; };
        if (want("identity"))
            results.push_back(harness::verify_identities(verify_cap));
        if (want("backend"))
            results.push_back(harness::verify_backends(verify_cap, 200, 150, verify_seed));
        if (want("lemma2"))
            results.push_back(harness::verify_lemma2(verify_cap, 500, verify_seed + 1));
        if (want("complete"))
            results.push_back(harness::verify_complete_sums(std::max<u64>(verify_cap, 3), 50, 10, verify_seed + 2));
        if (verify_suite == "lemma1") {
            auto const report = harness::lemma1_report(50, verify_cap, verify_seed + 3);
            out << "# lemma1 sumset report (no assertion): p,t,M,L1,L2,delta1,delta2,|A+B|,bound,ratio\n";
            for (auto const& e : report.entries)
                out << e.p << ',' << e.t << ',' << e.M << ',' << e.L1 << ',' << e.L2 << ','
                    << harness::format_double(e.delta1) << ',' << harness::format_double(e.delta2) << ','
                    << e.sumset_size << ',' << harness::format_double(e.bound) << ','
                    << harness::format_double(e.ratio) << '\n';
            out << "min ratio = " << harness::format_double(report.min_ratio) << '\n';
            return success;
        }
        bool all_ok = true;
        for (auto const& r : results) {
            out << (r.ok() ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.passed << "/" << r.checks
                << " checks passed\n";
            std::size_t shown = 0;
            for (auto const& f : r.failures) {
                if (shown++ == 20)
                    break;
                err << "  counterexample: " << f << '\n';
            }
            all_ok = all_ok && r.ok();
        }
        return all_ok ? success : assertion_failed;
    }

    harness::SweepConfig sweep_config()
    {
        harness::SweepConfig c;
        if (!sweep_config_path.empty()) {
            std::ifstream in(sweep_config_path);
            if (!in)
                throw UsageError("cannot read config " + sweep_config_path);
            ordered_json j;
            try {
                j = ordered_json::parse(in);
                c.primes = j.value("primes", std::vector<u64>{});
                c.prime_min = j.value("prime_min", c.prime_min);
                c.prime_max = j.value("prime_max", c.prime_max);
                c.orders = j.value("orders", std::vector<u64>{});
                if (j.contains("N_grid"))
                    c.n_grid = j.at("N_grid").get<std::vector<u64>>();
                c.grid_ratio = j.value("grid_ratio", c.grid_ratio);
                u64 const seed = j.value("seed", u64{1});
                if (j.value("lambda_mode", std::string("exhaustive")) == "sampled")
                    c.lambdas = LambdaSelection::sampled(j.value("samples", u64{1000}), seed);
                else
                    c.lambdas.seed = seed;
                c.sigma_cap = j.value("sigma_cap", c.sigma_cap);
                c.subgroup_energy = j.value("subgroup_energy", c.subgroup_energy);
                if (j.contains("slack")) {
                    auto const& s = j.at("slack");
                    c.slack.korobov = s.value("korobov", c.slack.korobov);
                    c.slack.theorem1 = s.value("thm1", c.slack.theorem1);
                    c.slack.theorem2 = s.value("thm2", c.slack.theorem2);
                    c.slack.lemma3 = s.value("lemma3", c.slack.lemma3);
                }
                c.cell_time_budget = j.value("cell_time_budget", c.cell_time_budget);
                c.workers = j.value("workers", c.workers);
                c.format = j.value("out", std::string("csv")) == "json" ? harness::OutputFormat::json
                                                                       : harness::OutputFormat::csv;
                c.path = j.value("path", std::string());
            } catch (nlohmann::json::exception const& e) {
                throw UsageError(std::string("bad config: ") + e.what());
            }
        }
        auto given = [&](char const* flag) { return sweep->count(flag) > 0; };
        if (given("--primes") || given("--p"))
            c.primes = parse_list(sweep_primes);
        if (given("--pmin"))
            c.prime_min = sweep_pmin;
        if (given("--pmax"))
            c.prime_max = sweep_pmax;
        if (given("--t"))
            c.orders = parse_list(sweep_orders);
        if (given("--N"))
            c.n_grid = parse_list(*sweep_grid);
        if (given("--grid-ratio"))
            c.grid_ratio = sweep_ratio;
        if (given("--mode") || given("--samples") || given("--seed")) {
            bool const sampled = given("--mode") ? sweep_mode == "sampled" : c.lambdas.mode == LambdaMode::sampled;
            u64 const seed = given("--seed") ? sweep_seed : c.lambdas.seed;
            u64 const samples = given("--samples") ? sweep_samples
                                                   : (c.lambdas.samples ? c.lambdas.samples : sweep_samples);
            c.lambdas = sampled ? LambdaSelection::sampled(samples, seed) : LambdaSelection::exhaustive();
            c.lambdas.seed = seed;
        }
        if (given("--sigma-cap"))
            c.sigma_cap = sweep_sigma_cap;
        if (given("--slack-korobov"))
            c.slack.korobov = slack_korobov;
        if (given("--slack-thm1"))
            c.slack.theorem1 = slack_thm1;
        if (given("--slack-thm2"))
            c.slack.theorem2 = slack_thm2;
        if (given("--slack-lemma3"))
            c.slack.lemma3 = slack_lemma3;
        if (given("--cell-budget"))
            c.cell_time_budget = sweep_budget;
        if (given("--workers"))
            c.workers = sweep_workers;
        if (given("--out"))
            c.format = sweep_out == "json" ? harness::OutputFormat::json : harness::OutputFormat::csv;
        if (given("--path"))
            c.path = sweep_path;
        if (c.primes.empty() && c.prime_max == 0)
            throw UsageError("sweep needs --primes, --pmax or a config with primes");
        return c;
    }

    int run_sweep(std::ostream& out, std::ostream& err)
    {
        harness::SweepConfig const config = sweep_config();
        config.validate();
        std::ofstream file;
        std::ostream* target = &out;
        if (!config.path.empty()) {
            file.open(config.path);
            if (!file)
                throw UsageError("cannot write " + config.path);
            target = &file;
        }
        bool const stamp = !sweep_no_timestamp;
        harness::CsvWriter csv(*target, stamp);
        harness::JsonLinesWriter jsonl(*target, stamp);
        harness::RowSink& sink = config.format == harness::OutputFormat::csv ? static_cast<harness::RowSink&>(csv)
                                                                             : jsonl;
        auto const summary = harness::run_sweep(config, sink);
        err << "sweep: " << summary.rows << " rows, " << summary.errors << " errors, " << summary.timeouts
            << " timeouts, " << summary.slack_breaches << " slack breaches\n";
        for (auto const& b : summary.breach_details)
            err << "  slack breach: " << b << '\n';
        return summary.slack_breaches == 0 ? success : assertion_failed;
    }
};

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    Commands cmd;
    std::vector<char const*> argv;
    argv.reserve(args.size());
    for (auto const& a : args)
        argv.push_back(a.c_str());
    try {
        cmd.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
        int const code = cmd.app.exit(e, out, err);
        return code == 0 ? success : usage_error;
    }

    try {
        if (cmd.sum->parsed())
            return cmd.run_sum(out);
        if (cmd.sigma->parsed())
            return cmd.run_sigma(out);
        if (cmd.maxsum->parsed())
            return cmd.run_maxsum(out);
        if (cmd.moment4->parsed())
            return cmd.run_moment4(out);
        if (cmd.energy->parsed())
            return cmd.run_energy(out);
        if (cmd.sumset_cmd->parsed())
            return cmd.run_sumset(out);
        if (cmd.bounds_cmd->parsed())
            return cmd.run_bounds(out);
        if (cmd.verify->parsed())
            return cmd.run_verify(out, err);
        if (cmd.sweep->parsed())
            return cmd.run_sweep(out, err);
    } catch (UsageError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (PreconditionError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (GuardError const& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    err << "error: no command\n";
    return usage_error;
}

} // namespace powsum::cli
