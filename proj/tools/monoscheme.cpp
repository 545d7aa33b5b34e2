// monoscheme: run configured experiments and compare their summaries.
//
//   monoscheme run <config> [--out DIR] [--format csv|jsonl] [--seed INT] [--tol FLOAT]
//   monoscheme compare <summary_a> <summary_b> [--out DIR]
//
// Exit status: 0 success, 2 parse error, 3 validation error, 4 solver
// failure. Failures print one line on stderr:
//   error status=<n> kind=<kind> message="<text>"
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "monoscheme/app.hpp"
#include "monoscheme/errors.hpp"

namespace fs = std::filesystem;
using namespace monoscheme;

namespace {

constexpr int kParse = 2;
constexpr int kValidation = 3;
constexpr int kSolver = 4;

int status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return kParse;
        case ErrorKind::Configuration:
        case ErrorKind::InvalidMesh:
        case ErrorKind::Comparison: return kValidation;
        default: return kSolver;
    }
}

int fail(int status, const std::string& kind, const std::string& message) {
    std::cerr << "error status=" << status << " kind=" << kind << " message=" << nlohmann::json(message).dump()
              << '\n';
    return status;
}

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error(ErrorKind::Configuration, "--out: cannot create directory '" + dir.string() + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotonized difference schemes: experiments and comparisons"};
    app.require_subcommand(1);

    std::string config, out_dir = ".", format = "csv";
    std::optional<long long> seed;
    std::optional<double> tol;
    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", config, "Config file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "jsonl"}));
    run->add_option("--seed", seed, "Seed for randomized fields");
    run->add_option("--tol", tol, "Tolerance override");

    std::string report_a, report_b;
    std::string compare_out;
    auto* cmp = app.add_subcommand("compare", "Compare two run summaries");
    cmp->add_option("a", report_a, "First summary")->required();
    cmp->add_option("b", report_b, "Second summary")->required();
    cmp->add_option("--out", compare_out, "Directory for compare.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kParse, "usage", e.what());
    }

    try {
        if (*run) {
            RunConfig cfg = parse_config(config);
            if (seed) {
                if (*seed < 0) throw Error(ErrorKind::Configuration, "--seed: must be >= 0");
                cfg.metrics.seed = static_cast<std::uint64_t>(*seed);
            }
            if (tol) apply_tol_override(cfg, *tol);
            validate(cfg);
            prepare_out_dir(out_dir);
            RunResult result = run_experiment(cfg);
            write_outputs(result, out_dir, format == "csv" ? OutputFormat::Csv : OutputFormat::Jsonl);
            std::cout << "ok experiment=" << result.summary.experiment
                      << " summary=" << (fs::path(out_dir) / summary_file_name(result.summary.name)).string()
                      << " checks_passed=" << (result.summary.all_checks_passed() ? "true" : "false") << '\n';
            return 0;
        }
        const Comparison c = compare(read_summary(report_a), read_summary(report_b));
        const std::string text = to_json(c).dump(2);
        std::cout << text << '\n';
        if (!compare_out.empty()) {
            prepare_out_dir(compare_out);
            std::ofstream os(fs::path(compare_out) / "compare.json");
            os << text << '\n';
            if (!os) throw Error(ErrorKind::Configuration, "cannot write compare.json");
        }
        return 0;
    } catch (const Error& e) {
        return fail(status_of(e.kind()), to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        return fail(kSolver, "internal", e.what());
    }
}
