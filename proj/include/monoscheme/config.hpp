// Experiment configuration files: flat INI-style key = value text with one
// section per concern.
//
//   [experiment]  kind = solve1d | solve3d | metrics | order | scan-det | timestep
//                 name = <table file stem>        (default: config file stem)
//                 schemes = both | base | monotonized   (solve1d, solve3d)
//   [scheme]      k0 k1 k2 k3
//   [mesh]        a b points                      (points counts both end nodes)
//   [boundary]    left right
//   [reference]   points
//   [flow]        L N rho nu p1 dp index_base hole_first hole_last
//                 sigma_v sigma_p tol max_iters write_fields
//   [order]       n = 20, 40, 80, 160
//   [scan]        h = 0.1, 0.05 ...   or   h_min h_max count;  threshold
//   [metrics]     N length samples seed
//   [timestep]    tau sigma form steps steady_tol snapshot_every
//
// Numbers may be written as simple fractions ("1/30").
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monoscheme/bvp1d.hpp"
#include "monoscheme/ns3d.hpp"
#include "monoscheme/timestep.hpp"

namespace monoscheme {

enum class Experiment { Solve1d, Solve3d, Metrics, Order, ScanDet, Timestep };

const char* to_string(Experiment e) noexcept;
std::optional<Experiment> parse_experiment(const std::string& s) noexcept;

enum class OutputFormat { Csv, Jsonl };

struct MetricsConfig {
    int N = 5;         ///< random 3D fields are N^3
    int length = 20;   ///< random 1D sequences
    int samples = 10;
    std::uint64_t seed = 1;
};

struct ScanConfig {
    std::vector<double> h;
    double threshold = 1e-8;
};

struct TimestepRunConfig {
    TimeStepConfig step;
    std::string form = "all";  ///< base, monotonized, monotonized-alt or all
    RunOptions run;
};

struct RunConfig {
    Experiment experiment = Experiment::Solve1d;
    std::string name;
    bool run_base = true;
    bool run_monotonized = true;

    SchemeCoefficients scheme;
    BoundaryData1D bc;
    double a = 0.0, b = 1.0;
    int points = 11;
    int reference_points = 100;

    FlowConfig flow;
    bool write_fields = false;

    std::vector<int> order_n{20, 40, 80, 160};
    ScanConfig scan;
    MetricsConfig metrics;
    TimestepRunConfig timestep;
};

/// Reads and converts a config file. Throws Error(Parse) for unreadable
/// files, malformed lines, unknown sections or keys, and values that are not
/// numbers where numbers are expected. Does not check ranges.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::string& default_name = "run");

/// Checks every parameter the chosen experiment will use. Throws
/// Error(Configuration) naming the offending key.
void validate(const RunConfig& cfg);

/// Replaces the experiment's tolerance (flow tol, or timestep steady_tol).
void apply_tol_override(RunConfig& cfg, double tol);

/// Parses "3", "-0.5", "1e-3" or "1/30". Throws Error(Parse).
double parse_number(const std::string& s);

}  // namespace monoscheme
