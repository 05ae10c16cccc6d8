#pragma once

#include "powsum/harness/sweep.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace powsum::harness {

inline constexpr int report_format_version = 1;

/// Column names shared by the CSV header and the JSON keys, in CSV order.
std::vector<std::string> const& report_columns();

/// %.15g, with -0 printed as 0.
std::string format_double(double x);

/// Cell values for one row, aligned with report_columns(); missing values are "".
std::vector<std::string> row_fields(ReportRow const& row);

/// CSV report: '#'-prefixed header lines (version, seed, conventions, then a
/// timestamp line), the column line, one line per row. Flushes every row.
class CsvWriter final : public RowSink {
public:
    explicit CsvWriter(std::ostream& out, bool timestamp = true) : out_(out), timestamp_(timestamp) {}
    void begin(SweepConfig const& config) override;
    void row(ReportRow const& row) override;
    void end() override;

private:
    std::ostream& out_;
    bool timestamp_;
};

/// JSON Lines: a metadata object, then one object per row keyed by column name.
class JsonLinesWriter final : public RowSink {
public:
    explicit JsonLinesWriter(std::ostream& out, bool timestamp = true) : out_(out), timestamp_(timestamp) {}
    void begin(SweepConfig const& config) override;
    void row(ReportRow const& row) override;
    void end() override;

private:
    std::ostream& out_;
    bool timestamp_;
};

/// Keeps rows in memory (tests, acceptance).
class CollectingSink final : public RowSink {
public:
    void begin(SweepConfig const&) override {}
    void row(ReportRow const& row) override { rows.push_back(row); }
    void end() override {}

    std::vector<ReportRow> rows;
};

} // namespace powsum::harness
