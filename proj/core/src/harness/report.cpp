#include "powsum/harness/report.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>

namespace powsum::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string opt(std::optional<double> const& v) { return v ? format_double(*v) : std::string(); }
std::string opt(std::optional<u64> const& v) { return v ? std::to_string(*v) : std::string(); }

std::string join(std::vector<std::string> const& parts, char sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

// JSON numbers carry the same 15 significant digits as the CSV
ordered_json json_number(std::optional<double> const& v)
{
    if (!v)
        return nullptr;
    return std::stod(format_double(*v));
}

ordered_json json_integer(std::optional<u64> const& v)
{
    if (!v)
        return nullptr;
    return *v;
}

std::string now_utc()
{
    std::time_t const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string mode_name(SweepConfig const& c)
{
    return c.lambdas.mode == LambdaMode::exhaustive ? "exhaustive"
                                                    : "sampled(" + std::to_string(c.lambdas.samples) + ")";
}

} // namespace

std::vector<std::string> const& report_columns()
{
    static std::vector<std::string> const columns{
        "p", "t", "g", "N", "lambda_mode", "lambdas_evaluated", "argmax_lambda", "max_abs_S",
        "sum_S4_nonzero", "sum_S4_source", "J", "fourth_moment_all", "energy_subgroup",
        "korobov_bound", "korobov_ratio", "thm1_bound", "thm1_ratio",
        "thm2_bound", "thm2_regime", "thm2_ratio", "thm3_bound", "thm3_regime", "thm3_ratio",
        "corollary_bound", "corollary_regime", "corollary_ratio",
        "shkredov_bound", "shkredov_regime", "shkredov_ratio",
        "sigma_max", "lemma3_bound1", "lemma3_ratio1", "lemma3_bound2", "lemma3_ratio2",
        "flags", "status"};
    return columns;
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::vector<std::string> row_fields(ReportRow const& r)
{
    return {std::to_string(r.p), std::to_string(r.t), std::to_string(r.g), std::to_string(r.N),
            r.lambda_mode, std::to_string(r.lambdas_evaluated), std::to_string(r.argmax_lambda),
            format_double(r.max_abs_s), opt(r.sum_s4_nonzero), r.sum_s4_source, opt(r.j_count),
            opt(r.fourth_moment_all), opt(r.subgroup_energy),
            opt(r.korobov_bound), opt(r.korobov_ratio), opt(r.theorem1_bound), opt(r.theorem1_ratio),
            opt(r.theorem2_bound), r.theorem2_regime, opt(r.theorem2_ratio),
            opt(r.theorem3_bound), r.theorem3_regime, opt(r.theorem3_ratio),
            opt(r.corollary_bound), r.corollary_regime, opt(r.corollary_ratio),
            opt(r.shkredov_bound), r.shkredov_regime, opt(r.shkredov_ratio),
            opt(r.sigma_max), opt(r.lemma3_bound1), opt(r.lemma3_ratio1), opt(r.lemma3_bound2),
            opt(r.lemma3_ratio2), join(r.flags, ';'), r.status};
}

void CsvWriter::begin(SweepConfig const& c)
{
    out_ << "# powsum sweep report\n"
         << "# format-version: " << report_format_version << '\n'
         << "# seed: " << c.lambdas.seed << '\n'
         << "# lambda-mode: " << mode_name(c) << '\n'
         << "# log: natural; o(1) exponent terms dropped; implied constants set to 1\n"
         << "# slack: korobov=" << format_double(c.slack.korobov) << " thm1=" << format_double(c.slack.theorem1)
         << " thm2=" << format_double(c.slack.theorem2) << " lemma3=" << format_double(c.slack.lemma3) << '\n'
         << "# generated: " << (timestamp_ ? now_utc() : std::string("-")) << '\n'
         << join(report_columns(), ',') << '\n';
    out_.flush();
}

void CsvWriter::row(ReportRow const& r)
{
    auto fields = row_fields(r);
    for (auto& f : fields)
        f = csv_escape(f);
    out_ << join(fields, ',') << '\n';
    out_.flush();
}

void CsvWriter::end() { out_.flush(); }

void JsonLinesWriter::begin(SweepConfig const& c)
{
    ordered_json meta;
    meta["report"] = "powsum sweep";
    meta["format_version"] = report_format_version;
    meta["seed"] = c.lambdas.seed;
    meta["lambda_mode"] = mode_name(c);
    meta["log_base"] = "e";
    meta["o1_dropped"] = true;
    meta["slack"] = {{"korobov", c.slack.korobov},
                     {"thm1", c.slack.theorem1},
                     {"thm2", c.slack.theorem2},
                     {"lemma3", c.slack.lemma3}};
    meta["columns"] = report_columns();
    meta["generated"] = timestamp_ ? now_utc() : std::string("-");
    out_ << meta.dump() << '\n';
    out_.flush();
}

void JsonLinesWriter::row(ReportRow const& r)
{
    ordered_json j;
    j["p"] = r.p;
    j["t"] = r.t;
    j["g"] = r.g;
    j["N"] = r.N;
    j["lambda_mode"] = r.lambda_mode;
    j["lambdas_evaluated"] = r.lambdas_evaluated;
    j["argmax_lambda"] = r.argmax_lambda;
    j["max_abs_S"] = json_number(r.max_abs_s);
    j["sum_S4_nonzero"] = json_number(r.sum_s4_nonzero);
    j["sum_S4_source"] = r.sum_s4_source;
    j["J"] = json_integer(r.j_count);
    j["fourth_moment_all"] = json_integer(r.fourth_moment_all);
    j["energy_subgroup"] = json_integer(r.subgroup_energy);
    j["korobov_bound"] = json_number(r.korobov_bound);
    j["korobov_ratio"] = json_number(r.korobov_ratio);
    j["thm1_bound"] = json_number(r.theorem1_bound);
    j["thm1_ratio"] = json_number(r.theorem1_ratio);
    j["thm2_bound"] = json_number(r.theorem2_bound);
    j["thm2_regime"] = r.theorem2_regime;
    j["thm2_ratio"] = json_number(r.theorem2_ratio);
    j["thm3_bound"] = json_number(r.theorem3_bound);
    j["thm3_regime"] = r.theorem3_regime;
    j["thm3_ratio"] = json_number(r.theorem3_ratio);
    j["corollary_bound"] = json_number(r.corollary_bound);
    j["corollary_regime"] = r.corollary_regime;
    j["corollary_ratio"] = json_number(r.corollary_ratio);
    j["shkredov_bound"] = json_number(r.shkredov_bound);
    j["shkredov_regime"] = r.shkredov_regime;
    j["shkredov_ratio"] = json_number(r.shkredov_ratio);
    j["sigma_max"] = json_number(r.sigma_max);
    j["lemma3_bound1"] = json_number(r.lemma3_bound1);
    j["lemma3_ratio1"] = json_number(r.lemma3_ratio1);
    j["lemma3_bound2"] = json_number(r.lemma3_bound2);
    j["lemma3_ratio2"] = json_number(r.lemma3_ratio2);
    j["flags"] = join(r.flags, ';');
    j["status"] = r.status;
    out_ << j.dump() << '\n';
    out_.flush();
}

void JsonLinesWriter::end() { out_.flush(); }

} // namespace powsum::harness
