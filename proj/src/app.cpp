#include "monoscheme/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "monoscheme/errors.hpp"
#include "monoscheme/metrics.hpp"
#include "monoscheme/stencil1d.hpp"

namespace monoscheme {

using nlohmann::json;

bool RunSummary::all_checks_passed() const noexcept {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

const MonotonicityReport* RunSummary::find(const std::string& n) const noexcept {
    for (const auto& s : series) {
        if (s.name == n) return &s;
    }
    return nullptr;
}

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    v.reset();
    if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const MonotonicityReport& r) {
    j = json{{"name", r.name}, {"f_value", r.f_value}, {"extremum_count", r.extremum_count}, {"region", r.region}};
    put_optional(j, "oscillates", r.oscillates);
    put_optional(j, "region_extremum_count", r.region_extremum_count);
    put_optional(j, "sharpness_a", r.sharpness_a);
    put_optional(j, "sharpness_b", r.sharpness_b);
    put_optional(j, "reference_distance", r.reference_distance);
}

void from_json(const json& j, MonotonicityReport& r) {
    j.at("name").get_to(r.name);
    j.at("f_value").get_to(r.f_value);
    j.at("extremum_count").get_to(r.extremum_count);
    j.at("region").get_to(r.region);
    get_optional(j, "oscillates", r.oscillates);
    get_optional(j, "region_extremum_count", r.region_extremum_count);
    get_optional(j, "sharpness_a", r.sharpness_a);
    get_optional(j, "sharpness_b", r.sharpness_b);
    get_optional(j, "reference_distance", r.reference_distance);
}

void to_json(json& j, const CheckResult& r) {
    j = json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
}

void from_json(const json& j, CheckResult& r) {
    j.at("name").get_to(r.name);
    j.at("passed").get_to(r.passed);
    j.at("detail").get_to(r.detail);
}

void to_json(json& j, const RunSummary& s) {
    j = json{{"experiment", s.experiment}, {"name", s.name},     {"scalars", s.scalars},
             {"series", s.series},         {"checks", s.checks}, {"tables", s.tables}};
}

void from_json(const json& j, RunSummary& s) {
    j.at("experiment").get_to(s.experiment);
    j.at("name").get_to(s.name);
    j.at("scalars").get_to(s.scalars);
    j.at("series").get_to(s.series);
    j.at("checks").get_to(s.checks);
    j.at("tables").get_to(s.tables);
}

namespace {

void scalar(RunSummary& s, const std::string& key, double v) {
    if (std::isfinite(v)) s.scalars[key] = v;
}

void check(RunSummary& s, std::string name, bool passed, const std::string& detail) {
    s.checks.push_back({std::move(name), passed, detail});
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

MonotonicityReport sequence_report(const std::string& name, std::span<const double> s,
                                   std::optional<std::span<const double>> ref) {
    MonotonicityReport r;
    r.name = name;
    r.oscillates = oscillates_point_to_point(s, 0, s.size() - 1);
    r.f_value = max_step_change(s);
    r.extremum_count = static_cast<long>(count_extrema_1d(s));
    r.region = "nodes 0.." + std::to_string(s.size() - 1);
    if (ref) r.reference_distance = max_norm_diff(s, *ref);
    return r;
}

// ---- solve1d --------------------------------------------------------------

RunResult run_solve1d(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const Mesh1D mesh = make_mesh_1d(cfg.a, cfg.b, cfg.points - 2);
    const std::vector<double> ref = dense_reference(cfg.scheme, mesh, cfg.bc, cfg.reference_points);

    Table t{"profile", {"x"}, {}};
    std::vector<std::vector<double>> cols;
    std::vector<double> x(static_cast<std::size_t>(mesh.n) + 2);
    for (int i = 0; i <= mesh.n + 1; ++i) x[i] = mesh.x(i);

    std::optional<std::vector<double>> u, v, y;
    if (cfg.run_base) {
        const Bvp1dSolution b = solve_base(cfg.scheme, mesh, cfg.bc);
        u = node_values(b);
        scalar(s, "residual_base", b.residual_c_norm);
        s.series.push_back(sequence_report("u", *u, ref));
        t.columns.push_back("u");
        cols.push_back(*u);
    }
    if (cfg.run_monotonized) {
        const Bvp1dSolution m = solve_monotonized(cfg.scheme, mesh, cfg.bc);
        y = node_values(m);
        v = m.auxiliary->with_boundary(cfg.bc);
        scalar(s, "residual_monotonized", m.residual_c_norm);
        s.series.push_back(sequence_report("v", *v, ref));
        s.series.push_back(sequence_report("y", *y, ref));
        t.columns.insert(t.columns.end(), {"v", "y"});
        cols.push_back(*v);
        cols.push_back(*y);
    }
    t.columns.push_back("reference");
    cols.push_back(ref);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> row{x[i]};
        for (const auto& c : cols) row.push_back(c[i]);
        t.rows.push_back(std::move(row));
    }
    out.tables.push_back(std::move(t));

    if (u) {
        const auto* ru = s.find("u");
        check(s, "base-oscillates", *ru->oscillates, *ru->oscillates ? "u alternates" : "u does not alternate");
    }
    if (y) {
        const auto* ry = s.find("y");
        check(s, "monotonized-not-oscillating", !*ry->oscillates,
              *ry->oscillates ? "y alternates" : "y does not alternate");
    }
    if (u && y) {
        const auto* ru = s.find("u");
        const auto* ry = s.find("y");
        check(s, "f-decreases", ry->f_value < ru->f_value, fmt("f(y) = %.6g, f(u) = %.6g", ry->f_value, ru->f_value));
        check(s, "closer-to-reference", *ry->reference_distance < *ru->reference_distance,
              fmt("|y-ref| = %.6g, |u-ref| = %.6g", *ry->reference_distance, *ru->reference_distance));

        // over the unknowns only; the shared end values would dilute the ratio
        const std::span<const double> ui(u->data() + 1, u->size() - 2), vi(v->data() + 1, v->size() - 2);
        const double un = max_norm(ui);
        const double closeness = un > 0.0 ? max_norm_diff(ui, vi) / un : max_norm_diff(ui, vi);
        scalar(s, "auxiliary_relative_distance", closeness);
        check(s, "auxiliary-close", closeness <= 0.05, fmt("|u-v|/|u| = %.6g (limit %.2g)", closeness, 0.05));

        try {
            const ClosenessReport p = check_closeness(
                *u, *v, [](std::span<const double> w) { return apply_m_nodes(w); },
                [](std::span<const double> w) { return max_step_change(w); });
            scalar(s, "closeness_delta", p.delta);
            scalar(s, "closeness_k", p.k);
            scalar(s, "closeness_epsilon", p.epsilon);
            scalar(s, "closeness_k1", p.k1);
            if (p.premises_hold) {
                scalar(s, "closeness_lo", p.interval.lo);
                scalar(s, "closeness_hi", p.interval.hi);
            }
            check(s, "closeness-interval", p.passed(),
                  p.premises_hold ? fmt("k1 = %.6g, interval [%.6g, %.6g]", p.k1, p.interval.lo, p.interval.hi)
                                  : "premise fails: " + p.failed_premise);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateInput) throw;
            check(s, "closeness-interval", false, e.what());
        }
    }
    return out;
}

// ---- solve3d --------------------------------------------------------------

MonotonicityReport field_report(const std::string& name, const MeshFunction3D& vx, const FlowConfig& cfg) {
    MonotonicityReport r;
    r.name = name;
    const int N = cfg.N;
    r.extremum_count = static_cast<long>(count_extrema_3d(vx, Region3D::interior(N)));
    const Region3D central = Region3D::cube(cfg.hole_first, cfg.hole_last);
    r.region = "interior 1.." + std::to_string(N - 2) + ", central " + std::to_string(cfg.hole_first) + ".." +
               std::to_string(cfg.hole_last);
    const std::vector<CellIndex> ext = find_extrema_3d(vx, central);
    r.region_extremum_count = static_cast<long>(ext.size());
    if (!ext.empty()) {
        const Sharpness sh = sharpness_metrics(vx, ext);
        r.sharpness_a = sh.a;
        r.sharpness_b = sh.b;
    }
    const int c = centerline_index(cfg);
    std::vector<double> line(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) line[i] = vx(i, c, c);
    r.f_value = max_step_change(line);
    return r;
}

Table field_table(const std::string& name, const FlowField& f) {
    Table t{name, {"i", "j", "k", "vx", "vy", "vz", "p"}, {}};
    const int N = f.mesh().N;
    std::size_t flat = 0;
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i, ++flat) {
                t.rows.push_back({double(i), double(j), double(k), f.vx.values[flat], f.vy.values[flat],
                                  f.vz.values[flat], f.p.values[flat]});
            }
        }
    }
    return t;
}

RunResult run_solve3d(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const FlowConfig& fc = cfg.flow;
    scalar(s, "sigma_v", resolved_sigma_v(fc));
    scalar(s, "sigma_p", resolved_sigma_p(fc));

    Table t{"centerline", {"x"}, {}};
    const Mesh3D mesh = flow_mesh(fc);
    for (int i = 0; i < fc.N; ++i) t.rows.push_back({mesh.center(i)});
    auto add_column = [&](const std::string& name, const FlowField& f) {
        t.columns.push_back(name);
        const auto prof = centerline_profile(f, fc, Axis::X);
        for (int i = 0; i < fc.N; ++i) t.rows[i].push_back(prof[i].second);
    };
    auto record = [&](const std::string& tag, const SolutionReport& r) {
        scalar(s, "iterations_" + tag, r.iterations);
        scalar(s, "converged_" + tag, r.converged ? 1.0 : 0.0);
        scalar(s, "momentum_residual_" + tag, r.momentum_residual);
        scalar(s, "divergence_residual_" + tag, r.divergence_residual);
        check(s, tag + "-converged", r.converged,
              fmt("%d sweeps, update %.3g, divergence %.3g", r.iterations, r.final_norms.update,
                  r.final_norms.divergence));
    };

    std::optional<SolutionReport> base, mono;
    if (cfg.run_base) {
        base = solve_steady(fc, FlowVariant::Base);
        record("base", *base);
        s.series.push_back(field_report("u", base->field.vx, fc));
        add_column("u_vx", base->field);
        if (cfg.write_fields) out.tables.push_back(field_table("field_u", base->field));
    }
    if (cfg.run_monotonized) {
        mono = solve_steady(fc, FlowVariant::Monotonized);
        record("monotonized", *mono);
        s.series.push_back(field_report("v", mono->field.vx, fc));
        s.series.push_back(field_report("y", mono->y->vx, fc));
        add_column("v_vx", mono->field);
        add_column("y_vx", *mono->y);
        if (cfg.write_fields) out.tables.push_back(field_table("field_y", *mono->y));
    }
    out.tables.insert(out.tables.begin(), std::move(t));

    if (base && mono) {
        const auto* ru = s.find("u");
        const auto* ry = s.find("y");
        if (ru->extremum_count > 0) {
            scalar(s, "extremum_ratio", double(ry->extremum_count) / double(ru->extremum_count));
        }
        check(s, "fewer-extrema", ry->extremum_count < ru->extremum_count,
              fmt("count(y) = %ld, count(u) = %ld", ry->extremum_count, ru->extremum_count));
        if (ru->sharpness_a && ry->sharpness_a) {
            scalar(s, "sharpness_a_ratio", *ry->sharpness_a / *ru->sharpness_a);
            check(s, "smaller-central-sharpness", *ry->sharpness_a < *ru->sharpness_a,
                  fmt("a(y) = %.6g, a(u) = %.6g", *ry->sharpness_a, *ru->sharpness_a));
        } else {
            check(s, "smaller-central-sharpness", false,
                  fmt("no central extrema to compare (u: %ld, y: %ld)", *ru->region_extremum_count,
                      *ry->region_extremum_count));
        }
        check(s, "smoother-centerline", ry->f_value < ru->f_value,
              fmt("f(y) = %.6g, f(u) = %.6g", ry->f_value, ru->f_value));
    }
    return out;
}

// ---- metrics --------------------------------------------------------------

RunResult run_metrics(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const MetricsConfig& mc = cfg.metrics;
    std::mt19937_64 rng(mc.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Mesh3D mesh = make_mesh_3d(1.0, mc.N);

    Table t{"samples", {"sample", "extrema", "a", "b", "f", "oscillates", "lipschitz_gap"}, {}};
    long total = 0;
    bool lipschitz = true;
    double worst_gap = -INFINITY;
    for (int n = 0; n < mc.samples; ++n) {
        MeshFunction3D u(mesh);
        for (double& x : u.values) x = dist(rng);
        std::vector<double> p(static_cast<std::size_t>(mc.length)), q(p.size());
        for (double& x : p) x = dist(rng);
        for (double& x : q) x = dist(rng);

        const std::vector<CellIndex> ext = find_extrema_3d(u, Region3D::interior(mc.N));
        Sharpness sh{NAN, NAN};
        if (!ext.empty()) sh = sharpness_metrics(u, ext);
        const double f = max_step_change(p);
        // |f(p) - f(q)| - 2 |p - q|_C must not be positive.
        const double gap = std::abs(f - max_step_change(q)) - 2.0 * max_norm_diff(p, q);
        lipschitz = lipschitz && gap <= 1e-15;
        worst_gap = std::max(worst_gap, gap);
        total += static_cast<long>(ext.size());
        t.rows.push_back({double(n), double(ext.size()), sh.a, sh.b, f,
                          oscillates_point_to_point(p, 0, p.size() - 1) ? 1.0 : 0.0, gap});
    }
    out.tables.push_back(std::move(t));
    scalar(s, "seed", static_cast<double>(mc.seed));
    scalar(s, "mean_extrema", double(total) / mc.samples);
    scalar(s, "worst_lipschitz_gap", worst_gap);
    check(s, "lipschitz-bound", lipschitz, fmt("max |f(p)-f(q)| - 2|p-q| = %.3g", worst_gap));
    return out;
}

// ---- order ----------------------------------------------------------------

RunResult run_order(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const ConvergenceReport b = convergence_order(cfg.scheme, cfg.bc, Scheme::Base, cfg.order_n, cfg.a, cfg.b);
    const ConvergenceReport m =
        convergence_order(cfg.scheme, cfg.bc, Scheme::Monotonized, cfg.order_n, cfg.a, cfg.b);
    Table t{"errors", {"n", "h", "error_base", "error_monotonized"}, {}};
    for (std::size_t i = 0; i < b.n.size(); ++i) t.rows.push_back({double(b.n[i]), b.h[i], b.error[i], m.error[i]});
    out.tables.push_back(std::move(t));
    scalar(s, "order_base", b.order);
    scalar(s, "order_monotonized", m.order);
    for (const auto* r : {&b, &m}) {
        const std::string tag = r == &b ? "base" : "monotonized";
        const bool ok = !r->degenerate && r->order >= 1.8 && r->order <= 2.2;
        check(s, tag + "-second-order", ok,
              r->degenerate ? std::string("errors at round-off level") : fmt("order %.4f", r->order));
    }
    return out;
}

// ---- scan-det -------------------------------------------------------------

RunResult run_scan(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const auto entries = determinant_scan(cfg.scheme, cfg.scan.h, cfg.bc, cfg.a, cfg.b, cfg.scan.threshold);
    Table t{"pivots",
            {"h", "n", "base_min_pivot", "base_log_abs_det", "base_det_sign", "monotonized_min_pivot",
             "monotonized_log_abs_det", "monotonized_det_sign", "flagged"},
            {}};
    long flagged = 0;
    double min_base = INFINITY, min_mono = INFINITY;
    for (const auto& e : entries) {
        t.rows.push_back({e.h, double(e.n), e.base.min_pivot, e.base.log_abs_det, double(e.base.det_sign),
                          e.monotonized.min_pivot, e.monotonized.log_abs_det, double(e.monotonized.det_sign),
                          e.flagged ? 1.0 : 0.0});
        flagged += e.flagged;
        min_base = std::min(min_base, e.base.min_pivot);
        min_mono = std::min(min_mono, e.monotonized.min_pivot);
    }
    out.tables.push_back(std::move(t));
    scalar(s, "steps_scanned", double(entries.size()));
    scalar(s, "flagged", double(flagged));
    scalar(s, "min_pivot_base", min_base);
    scalar(s, "min_pivot_monotonized", min_mono);
    return out;
}

// ---- timestep -------------------------------------------------------------

RunResult run_timestep(const RunConfig& cfg) {
    RunResult out;
    RunSummary& s = out.summary;
    const Mesh1D mesh = make_mesh_1d(cfg.a, cfg.b, cfg.points - 2);
    const TimeRhs F = evolution_rhs(cfg.scheme);
    const TimestepRunConfig& tc = cfg.timestep;

    std::vector<StepForm> forms;
    if (tc.form == "all" || tc.form == "base") forms.push_back(StepForm::Base);
    if (tc.form == "all" || tc.form == "monotonized") forms.push_back(StepForm::Monotonized);
    if (tc.form == "all" || tc.form == "monotonized-alt") forms.push_back(StepForm::MonotonizedAlt);

    const std::vector<double> stat_u = node_values(solve_base(cfg.scheme, mesh, cfg.bc));
    const std::vector<double> stat_y = node_values(solve_monotonized(cfg.scheme, mesh, cfg.bc));

    Table final{"final", {"x"}, {}};
    for (int i = 0; i <= mesh.n + 1; ++i) final.rows.push_back({mesh.x(i)});
    auto add_column = [&](const std::string& name, const std::vector<double>& col) {
        final.columns.push_back(name);
        for (std::size_t i = 0; i < col.size(); ++i) final.rows[i].push_back(col[i]);
    };
    add_column("stationary_u", stat_u);
    add_column("stationary_y", stat_y);

    std::map<StepForm, std::vector<double>> answers;
    for (StepForm form : forms) {
        const std::string tag = to_string(form);
        const Trajectory tr = march(MeshFunction1D(mesh), F, cfg.bc, tc.step, form, tc.run);
        const std::vector<double> ans = (tr.answer ? *tr.answer : tr.state).with_boundary(cfg.bc);
        answers[form] = ans;
        add_column(tag, ans);

        Table hist{"history_" + tag, {"t", "update"}, {}};
        for (const auto& p : tr.points) hist.rows.push_back({p.t, p.update});
        out.tables.push_back(std::move(hist));
        if (!tr.snapshots.empty()) {
            Table snap{"snapshots_" + tag, {"t", "x", "value"}, {}};
            for (const auto& sn : tr.snapshots) {
                const std::vector<double> full = MeshFunction1D(mesh, sn.values).with_boundary(cfg.bc);
                for (int i = 0; i <= mesh.n + 1; ++i) snap.rows.push_back({sn.t, mesh.x(i), full[i]});
            }
            out.tables.push_back(std::move(snap));
        }

        const double dist = max_norm_diff(ans, form == StepForm::Base ? stat_u : stat_y);
        scalar(s, "steps_" + tag, tr.steps);
        scalar(s, "final_update_" + tag, tr.points.empty() ? 0.0 : tr.points.back().update);
        scalar(s, "distance_to_stationary_" + tag, dist);
        s.series.push_back(sequence_report(form == StepForm::Base ? "u_" + tag : "y_" + tag, ans,
                                           std::span<const double>(form == StepForm::Base ? stat_u : stat_y)));
        if (tc.run.steady_tol > 0.0) {
            const double limit = 10.0 * tc.run.steady_tol;
            check(s, tag + "-steady-state", tr.converged && dist <= limit,
                  fmt("%s after %d steps, distance %.3g (limit %.3g)", tr.converged ? "steady" : "not steady",
                      tr.steps, dist, limit));
        }
    }
    if (answers.count(StepForm::Monotonized) && answers.count(StepForm::MonotonizedAlt)) {
        const double d = max_norm_diff(answers[StepForm::Monotonized], answers[StepForm::MonotonizedAlt]);
        scalar(s, "form_difference", d);
        check(s, "forms-agree", d <= 1e-10, fmt("|y - y_alt| = %.3g (limit 1e-10)", d));
    }
    out.tables.insert(out.tables.begin(), std::move(final));
    return out;
}

// ---- output ---------------------------------------------------------------

std::string number_text(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(const Table& t, const std::filesystem::path& file, OutputFormat fmt_) {
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw Error(ErrorKind::Configuration, "cannot write '" + file.string() + "'");
    if (fmt_ == OutputFormat::Csv) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << number_text(row[c]);
            os << '\n';
        }
    } else {
        for (const auto& row : t.rows) {
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (std::isfinite(row[c])) {
                    j[t.columns[c]] = row[c];
                } else {
                    j[t.columns[c]] = nullptr;
                }
            }
            os << j.dump() << '\n';
        }
    }
    if (!os) throw Error(ErrorKind::Configuration, "write failed for '" + file.string() + "'");
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg) {
    validate(cfg);
    RunResult r;
    switch (cfg.experiment) {
        case Experiment::Solve1d: r = run_solve1d(cfg); break;
        case Experiment::Solve3d: r = run_solve3d(cfg); break;
        case Experiment::Metrics: r = run_metrics(cfg); break;
        case Experiment::Order: r = run_order(cfg); break;
        case Experiment::ScanDet: r = run_scan(cfg); break;
        case Experiment::Timestep: r = run_timestep(cfg); break;
    }
    r.summary.experiment = to_string(cfg.experiment);
    r.summary.name = cfg.name;
    return r;
}

std::string table_file_name(const std::string& run, const std::string& table, OutputFormat fmt_) {
    return run + "_" + table + (fmt_ == OutputFormat::Csv ? ".csv" : ".jsonl");
}

std::string summary_file_name(const std::string& run) { return run + "_summary.json"; }

void write_outputs(RunResult& result, const std::filesystem::path& dir, OutputFormat fmt_) {
    result.summary.tables.clear();
    for (const Table& t : result.tables) {
        const std::string name = table_file_name(result.summary.name, t.name, fmt_);
        write_table(t, dir / name, fmt_);
        result.summary.tables.push_back(name);
    }
    const std::filesystem::path file = dir / summary_file_name(result.summary.name);
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw Error(ErrorKind::Configuration, "cannot write '" + file.string() + "'");
    os << json(result.summary).dump(2) << '\n';
    if (!os) throw Error(ErrorKind::Configuration, "write failed for '" + file.string() + "'");
}

RunSummary read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot read summary '" + path.string() + "'");
    try {
        return json::parse(in).get<RunSummary>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, "'" + path.string() + "' is not a run summary: " + e.what());
    }
}

namespace {

SeriesDelta delta(const MonotonicityReport& a, const MonotonicityReport& b) {
    SeriesDelta d;
    d.a = a.name;
    d.b = b.name;
    d.f_delta = b.f_value - a.f_value;
    d.extremum_delta = b.extremum_count - a.extremum_count;
    if (a.extremum_count > 0) d.extremum_ratio = double(b.extremum_count) / double(a.extremum_count);
    if (a.sharpness_a && b.sharpness_a) d.a_delta = *b.sharpness_a - *a.sharpness_a;
    if (a.sharpness_b && b.sharpness_b) d.b_delta = *b.sharpness_b - *a.sharpness_b;
    if (a.reference_distance && b.reference_distance) {
        d.reference_distance_delta = *b.reference_distance - *a.reference_distance;
    }
    return d;
}

}  // namespace

Comparison compare(const RunSummary& a, const RunSummary& b) {
    if (a.experiment != b.experiment) {
        throw Error(ErrorKind::Comparison,
                    "reports come from different experiments (" + a.experiment + " vs " + b.experiment + ")");
    }
    Comparison c;
    c.experiment = a.experiment;
    for (const auto& sa : a.series) {
        if (const auto* sb = b.find(sa.name)) c.deltas.push_back(delta(sa, *sb));
    }
    if (c.deltas.empty()) {
        const auto* u = a.find("u");
        const auto* y = b.find("y");
        if (u && y && !a.find("y") && !b.find("u")) c.deltas.push_back(delta(*u, *y));
    }
    if (c.deltas.empty()) throw Error(ErrorKind::Comparison, "reports share no comparable series");
    for (const auto& [k, va] : a.scalars) {
        const auto it = b.scalars.find(k);
        if (it != b.scalars.end()) c.scalar_deltas[k] = it->second - va;
    }
    return c;
}

json to_json(const Comparison& c) {
    json j{{"experiment", c.experiment}, {"scalar_deltas", c.scalar_deltas}, {"series", json::array()}};
    for (const auto& d : c.deltas) {
        json e{{"a", d.a}, {"b", d.b}, {"f_delta", d.f_delta}, {"extremum_delta", d.extremum_delta}};
        put_optional(e, "extremum_ratio", d.extremum_ratio);
        put_optional(e, "sharpness_a_delta", d.a_delta);
        put_optional(e, "sharpness_b_delta", d.b_delta);
        put_optional(e, "reference_distance_delta", d.reference_distance_delta);
        j["series"].push_back(std::move(e));
    }
    return j;
}

}  // namespace monoscheme
