// Running configured experiments, writing their tables and summaries, and
// comparing two summaries.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoscheme/config.hpp"

namespace monoscheme {

/// Monotonicity figures of one mesh function.
struct MonotonicityReport {
    std::string name;
    std::optional<bool> oscillates;  ///< 1D only: alternates over the whole node range
    double f_value = 0.0;            ///< max change per step (1D sequence, or the 3D centreline)
    long extremum_count = 0;
    std::string region;                        ///< where extremum_count was taken
    std::optional<long> region_extremum_count; ///< 3D only: extrema inside the central box
    std::optional<double> sharpness_a;         ///< over the central-box extrema, when there are any
    std::optional<double> sharpness_b;
    std::optional<double> reference_distance;  ///< C-norm distance to a reference, when one exists

    friend bool operator==(const MonotonicityReport&, const MonotonicityReport&) = default;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct RunSummary {
    std::string experiment;
    std::string name;
    std::map<std::string, double> scalars;  ///< residuals, iteration counts, orders; finite values only
    std::vector<MonotonicityReport> series;
    std::vector<CheckResult> checks;
    std::vector<std::string> tables;  ///< file names written next to the summary

    bool all_checks_passed() const noexcept;
    const MonotonicityReport* find(const std::string& name) const noexcept;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

void to_json(nlohmann::json& j, const MonotonicityReport& r);
void from_json(const nlohmann::json& j, MonotonicityReport& r);
void to_json(nlohmann::json& j, const CheckResult& r);
void from_json(const nlohmann::json& j, CheckResult& r);
void to_json(nlohmann::json& j, const RunSummary& s);
void from_json(const nlohmann::json& j, RunSummary& s);

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct RunResult {
    RunSummary summary;
    std::vector<Table> tables;
};

/// Validates, then runs. Solver failures propagate as Error.
RunResult run_experiment(const RunConfig& cfg);

/// File name of a table: <run name>_<table name>.csv or .jsonl
std::string table_file_name(const std::string& run, const std::string& table, OutputFormat fmt);
std::string summary_file_name(const std::string& run);

/// Writes every table and the summary (always JSON) into dir, which must
/// exist. Fills summary.tables. Throws Error(Configuration) on I/O failure.
void write_outputs(RunResult& result, const std::filesystem::path& dir, OutputFormat fmt);

/// Throws Error(Parse) if the file is unreadable or not a summary.
RunSummary read_summary(const std::filesystem::path& path);

struct SeriesDelta {
    std::string a;  ///< series name in the first report
    std::string b;  ///< series name in the second report
    double f_delta = 0.0;  ///< f(b) - f(a)
    long extremum_delta = 0;
    std::optional<double> extremum_ratio;  ///< count(b) / count(a), when count(a) > 0
    std::optional<double> a_delta;
    std::optional<double> b_delta;
    std::optional<double> reference_distance_delta;
};

struct Comparison {
    std::string experiment;
    std::vector<SeriesDelta> deltas;
    std::map<std::string, double> scalar_deltas;  ///< second minus first, keys present in both
};

/// Pairs series by name. Two single-scheme reports (one holding only "u",
/// the other only "y") are paired u -> y. Throws Error(Comparison) when the
/// experiments differ or no series pair up.
Comparison compare(const RunSummary& a, const RunSummary& b);

nlohmann::json to_json(const Comparison& c);

}  // namespace monoscheme
