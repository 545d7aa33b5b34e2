#include "monoscheme/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "monoscheme/errors.hpp"

namespace monoscheme {

namespace pt = boost::property_tree;

const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::Solve1d: return "solve1d";
        case Experiment::Solve3d: return "solve3d";
        case Experiment::Metrics: return "metrics";
        case Experiment::Order: return "order";
        case Experiment::ScanDet: return "scan-det";
        case Experiment::Timestep: return "timestep";
    }
    return "?";
}

std::optional<Experiment> parse_experiment(const std::string& s) noexcept {
    for (Experiment e : {Experiment::Solve1d, Experiment::Solve3d, Experiment::Metrics, Experiment::Order,
                         Experiment::ScanDet, Experiment::Timestep}) {
        if (s == to_string(e)) return e;
    }
    return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_plain(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"experiment", {"kind", "name", "schemes"}},
        {"scheme", {"k0", "k1", "k2", "k3"}},
        {"mesh", {"a", "b", "points"}},
        {"boundary", {"left", "right"}},
        {"reference", {"points"}},
        {"flow",
         {"L", "N", "rho", "nu", "p0", "p1", "dp", "index_base", "hole_first", "hole_last", "sigma_v", "sigma_p",
          "tol", "max_iters", "write_fields"}},
        {"order", {"n"}},
        {"scan", {"h", "h_min", "h_max", "count", "threshold"}},
        {"metrics", {"N", "length", "samples", "seed"}},
        {"timestep", {"tau", "sigma", "form", "steps", "steady_tol", "snapshot_every", "tol", "max_iters"}},
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(section);
        if (!sec) return std::nullopt;
        const auto v = sec->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return trim(*v);
    }

    void number(const std::string& section, const std::string& key, double& out) const {
        if (auto v = raw(section, key)) out = checked_number(section, key, *v);
    }
    void optional_number(const std::string& section, const std::string& key, std::optional<double>& out) const {
        if (auto v = raw(section, key)) out = checked_number(section, key, *v);
    }

    template <class Int>
    void integer(const std::string& section, const std::string& key, Int& out) const {
        if (auto v = raw(section, key)) {
            const double x = checked_number(section, key, *v);
            if (x != std::floor(x) || std::abs(x) > 9.0e15) {
                parse_fail(section + "." + key + ": expected an integer, got '" + *v + "'");
            }
            out = static_cast<Int>(x);
        }
    }

    void boolean(const std::string& section, const std::string& key, bool& out) const {
        if (auto v = raw(section, key)) {
            if (*v == "true" || *v == "1" || *v == "yes") {
                out = true;
            } else if (*v == "false" || *v == "0" || *v == "no") {
                out = false;
            } else {
                parse_fail(section + "." + key + ": expected true or false, got '" + *v + "'");
            }
        }
    }

    std::vector<double> list(const std::string& section, const std::string& key) const {
        std::vector<double> out;
        const auto v = raw(section, key);
        if (!v) return out;
        std::string text = *v;
        for (char& c : text) {
            if (c == ',') c = ' ';
        }
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) out.push_back(checked_number(section, key, tok));
        if (out.empty()) parse_fail(section + "." + key + ": empty list");
        return out;
    }

private:
    static double checked_number(const std::string& section, const std::string& key, const std::string& v) {
        try {
            return parse_number(v);
        } catch (const Error&) {
            parse_fail(section + "." + key + ": expected a number, got '" + v + "'");
        }
    }

    const pt::ptree& tree_;
};

RunConfig from_tree(const pt::ptree& tree, const std::string& default_name) {
    const auto& keys = known_keys();
    for (const auto& [section, body] : tree) {
        const auto it = keys.find(section);
        if (it == keys.end()) parse_fail("unknown section [" + section + "]");
        if (body.empty() && !body.data().empty()) parse_fail("key '" + section + "' outside any section");
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) parse_fail("unknown key " + section + "." + key);
            if (!value.empty()) parse_fail("nested value under " + section + "." + key);
        }
    }

    const Reader r(tree);
    RunConfig cfg;
    const auto kind = r.raw("experiment", "kind");
    if (!kind) parse_fail("missing experiment.kind");
    const auto e = parse_experiment(*kind);
    if (!e) parse_fail("experiment.kind: unknown experiment '" + *kind + "'");
    cfg.experiment = *e;
    cfg.name = r.raw("experiment", "name").value_or(default_name);
    if (cfg.name.empty() || cfg.name.find('/') != std::string::npos) parse_fail("experiment.name: not a file stem");

    if (auto v = r.raw("experiment", "schemes")) {
        if (*v == "base") {
            cfg.run_monotonized = false;
        } else if (*v == "monotonized") {
            cfg.run_base = false;
        } else if (*v != "both") {
            parse_fail("experiment.schemes: expected both, base or monotonized");
        }
    }

    r.number("scheme", "k0", cfg.scheme.k0);
    r.number("scheme", "k1", cfg.scheme.k1);
    r.number("scheme", "k2", cfg.scheme.k2);
    r.number("scheme", "k3", cfg.scheme.k3);
    r.number("mesh", "a", cfg.a);
    r.number("mesh", "b", cfg.b);
    r.integer("mesh", "points", cfg.points);
    r.number("boundary", "left", cfg.bc.left);
    r.number("boundary", "right", cfg.bc.right);
    r.integer("reference", "points", cfg.reference_points);

    FlowConfig& f = cfg.flow;
    r.number("flow", "L", f.L);
    r.integer("flow", "N", f.N);
    r.number("flow", "rho", f.rho);
    r.number("flow", "nu", f.nu);
    r.number("flow", "p1", f.p1);
    r.number("flow", "p0", f.p0);
    if (r.raw("flow", "dp")) {
        if (r.raw("flow", "p0")) parse_fail("flow: give either p0 or dp, not both");
        double dp = 0.0;
        r.number("flow", "dp", dp);
        f.p0 = f.p1 + dp;
    }
    int base = 0;
    r.integer("flow", "index_base", base);
    if (base != 0 && base != 1) parse_fail("flow.index_base: expected 0 or 1");
    if (r.raw("flow", "hole_first")) {
        r.integer("flow", "hole_first", f.hole_first);
        f.hole_first -= base;
    }
    if (r.raw("flow", "hole_last")) {
        r.integer("flow", "hole_last", f.hole_last);
        f.hole_last -= base;
    }
    r.optional_number("flow", "sigma_v", f.sigma_v);
    r.optional_number("flow", "sigma_p", f.sigma_p);
    r.number("flow", "tol", f.tol);
    r.integer("flow", "max_iters", f.max_iters);
    r.boolean("flow", "write_fields", cfg.write_fields);

    if (r.raw("order", "n")) {
        cfg.order_n.clear();
        for (double x : r.list("order", "n")) {
            if (x != std::floor(x)) parse_fail("order.n: expected integers");
            cfg.order_n.push_back(static_cast<int>(x));
        }
    }

    if (r.raw("scan", "h")) {
        if (r.raw("scan", "h_min") || r.raw("scan", "h_max") || r.raw("scan", "count")) {
            parse_fail("scan: give either h or h_min/h_max/count");
        }
        cfg.scan.h = r.list("scan", "h");
    } else if (r.raw("scan", "h_min") || r.raw("scan", "h_max") || r.raw("scan", "count")) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (!r.raw("scan", "h_min") || !r.raw("scan", "h_max") || !r.raw("scan", "count")) {
            parse_fail("scan: h_min, h_max and count go together");
        }
        r.number("scan", "h_min", lo);
        r.number("scan", "h_max", hi);
        r.integer("scan", "count", count);
        // Validated later; an empty list here reports as a validation error.
        if (count >= 2 && lo > 0.0 && hi > lo) {
            for (int i = 0; i < count; ++i) cfg.scan.h.push_back(hi - (hi - lo) * i / (count - 1));
        } else if (count == 1) {
            cfg.scan.h.push_back(hi);
        }
    }
    r.number("scan", "threshold", cfg.scan.threshold);

    r.integer("metrics", "N", cfg.metrics.N);
    r.integer("metrics", "length", cfg.metrics.length);
    r.integer("metrics", "samples", cfg.metrics.samples);
    if (auto s = r.raw("metrics", "seed")) {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), seed);
        if (ec != std::errc() || ptr != s->data() + s->size()) parse_fail("metrics.seed: expected an unsigned integer");
        cfg.metrics.seed = seed;
    }

    TimestepRunConfig& t = cfg.timestep;
    r.number("timestep", "tau", t.step.tau);
    r.number("timestep", "sigma", t.step.sigma);
    r.number("timestep", "tol", t.step.tol);
    r.integer("timestep", "max_iters", t.step.max_iters);
    if (auto v = r.raw("timestep", "form")) t.form = *v;
    r.integer("timestep", "steps", t.run.max_steps);
    r.number("timestep", "steady_tol", t.run.steady_tol);
    r.integer("timestep", "snapshot_every", t.run.snapshot_every);
    return cfg;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Configuration, what); }

}  // namespace

double parse_number(const std::string& text) {
    const std::string s = trim(text);
    double out = 0.0;
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!parse_plain(s, out)) parse_fail("not a number: '" + s + "'");
        return out;
    }
    double num = 0.0, den = 0.0;
    if (!parse_plain(trim(s.substr(0, slash)), num) || !parse_plain(trim(s.substr(slash + 1)), den) || den == 0.0) {
        parse_fail("not a number or fraction: '" + s + "'");
    }
    return num / den;
}

RunConfig parse_config_text(const std::string& text, const std::string& default_name) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::ini_parser::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        std::ostringstream os;
        os << "line " << e.line() << ": " << e.message();
        parse_fail(os.str());
    }
    return from_tree(tree, default_name);
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.stem().string());
}

void validate(const RunConfig& cfg) {
    auto positive_finite = [](double x) { return x > 0.0 && std::isfinite(x); };
    auto check_1d = [&] {
        try {
            validate(cfg.scheme);
        } catch (const Error& e) {
            invalid(std::string("scheme: ") + e.what());
        }
        if (!std::isfinite(cfg.a) || !std::isfinite(cfg.b) || !(cfg.a < cfg.b)) invalid("mesh: need finite a < b");
        if (!std::isfinite(cfg.bc.left) || !std::isfinite(cfg.bc.right)) invalid("boundary: values must be finite");
    };

    switch (cfg.experiment) {
        case Experiment::Solve1d:
            check_1d();
            if (cfg.points < 3) invalid("mesh.points: need at least 3 points");
            if (cfg.reference_points < 3) invalid("reference.points: need at least 3 points");
            break;
        case Experiment::Solve3d:
            try {
                validate(cfg.flow);
            } catch (const Error& e) {
                invalid(e.what());
            }
            break;
        case Experiment::Metrics:
            if (cfg.metrics.N < 3 || cfg.metrics.N > 64) invalid("metrics.N: need 3 <= N <= 64");
            if (cfg.metrics.length < 3) invalid("metrics.length: need at least 3");
            if (cfg.metrics.samples < 1) invalid("metrics.samples: need at least 1");
            break;
        case Experiment::Order: {
            check_1d();
            if (cfg.order_n.size() < 3) invalid("order.n: need at least three mesh sizes");
            for (std::size_t i = 0; i < cfg.order_n.size(); ++i) {
                if (cfg.order_n[i] < 1) invalid("order.n: sizes must be >= 1");
                if (i > 0 && cfg.order_n[i] <= cfg.order_n[i - 1]) invalid("order.n: must be strictly increasing");
            }
            break;
        }
        case Experiment::ScanDet:
            check_1d();
            if (cfg.scan.h.empty()) invalid("scan: no step sizes (check h or h_min/h_max/count)");
            for (double h : cfg.scan.h) {
                if (!positive_finite(h)) invalid("scan.h: steps must be positive");
            }
            if (!positive_finite(cfg.scan.threshold)) invalid("scan.threshold: must be positive");
            break;
        case Experiment::Timestep: {
            check_1d();
            if (cfg.points < 3) invalid("mesh.points: need at least 3 points");
            try {
                validate(cfg.timestep.step);
            } catch (const Error& e) {
                invalid(e.what());
            }
            const std::string& form = cfg.timestep.form;
            if (form != "all" && form != "base" && form != "monotonized" && form != "monotonized-alt") {
                invalid("timestep.form: expected base, monotonized, monotonized-alt or all");
            }
            if (cfg.timestep.run.max_steps < 1) invalid("timestep.steps: need at least 1");
            if (!(cfg.timestep.run.steady_tol >= 0.0)) invalid("timestep.steady_tol: must be >= 0");
            if (cfg.timestep.run.snapshot_every < 0) invalid("timestep.snapshot_every: must be >= 0");
            break;
        }
    }
}

void apply_tol_override(RunConfig& cfg, double tol) {
    if (!(tol > 0.0 && std::isfinite(tol))) invalid("--tol: must be positive");
    cfg.flow.tol = tol;
    cfg.timestep.run.steady_tol = tol;
}

}  // namespace monoscheme
