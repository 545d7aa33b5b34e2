// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "monoscheme/bvp1d.hpp"
#include "monoscheme/errors.hpp"
#include "monoscheme/metrics.hpp"
#include "monoscheme/ns3d.hpp"
#include "monoscheme/stencil1d.hpp"
#include "monoscheme/stencil3d.hpp"
#include "monoscheme/timestep.hpp"
#include "oracles.hpp"

using namespace monoscheme;

namespace {

const SchemeCoefficients kFig1{10.0, -5.0, 30.0, -1.0};
const BoundaryData1D kFig1Bc{0.5, 0.5};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = limit_s <= 0.0 || secs <= limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d: %s  %s | %s | %.2fs%s\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs,
                in_time ? "" : " (over time limit)");
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Fig1 {
    std::vector<double> u, v, y, ref;
};

Fig1 fig1() {
    const auto mesh = make_mesh_1d(0.0, 1.0, 9);
    const auto base = solve_base(kFig1, mesh, kFig1Bc);
    const auto mono = solve_monotonized(kFig1, mesh, kFig1Bc);
    return {node_values(base), mono.auxiliary->with_boundary(kFig1Bc), node_values(mono),
            dense_reference(kFig1, mesh, kFig1Bc, 100)};
}

Outcome criterion1() {
    const auto s = fig1();
    const std::size_t last = s.u.size() - 1;
    const bool u_osc = oscillates_point_to_point(s.u, 0, last);
    const bool y_osc = oscillates_point_to_point(s.y, 0, last);
    const double fu = max_step_change(s.u), fy = max_step_change(s.y);
    const double du = max_norm_diff(s.u, s.ref), dy = max_norm_diff(s.y, s.ref);
    const bool ok = u_osc && !y_osc && fy < fu && dy < du;
    return {ok, fmt("u oscillates=%s (interior extrema %zu), y oscillates=%s, f(u)=%.6g f(y)=%.6g, "
                    "|u-ref|=%.6g |y-ref|=%.6g",
                    u_osc ? "yes" : "no", count_extrema_1d(s.u), y_osc ? "yes" : "no", fu, fy, du, dy)};
}

Outcome criterion2() {
    const auto s = fig1();
    std::vector<double> ui(s.u.begin() + 1, s.u.end() - 1), vi(s.v.begin() + 1, s.v.end() - 1);
    const double r = max_norm_diff(ui, vi) / max_norm(ui);
    return {r <= 0.05, fmt("|u-v|/|u| = %.6g (limit 0.05)", r)};
}

Outcome criterion3() {
    const auto s = fig1();
    const auto r = check_closeness(
        s.u, s.v, [](std::span<const double> x) { return apply_m_nodes(x); },
        [](std::span<const double> x) { return max_step_change(x); }, 2.0, 1.0);
    return {r.passed(), fmt("delta=%.6g k=%.6g eps=%.6g K|M|eps=%.6g < k delta=%.6g: %s; k1=%.6g in [%.6g, %.6g]: %s",
                            r.delta, r.k, r.epsilon, r.K * r.normM * r.epsilon, r.k * r.delta,
                            r.premises_hold ? "yes" : "no", r.k1, r.interval.lo, r.interval.hi,
                            r.k1_inside ? "yes" : "no")};
}

Outcome criterion4() {
    const std::vector<int> ns{20, 40, 80, 160};
    const SchemeCoefficients c{1.0, -1.0, 1.0, 1.0};
    const auto b = convergence_order(c, {0.0, 1.0}, Scheme::Base, ns);
    const auto m = convergence_order(c, {0.0, 1.0}, Scheme::Monotonized, ns);
    auto in = [](double p) { return p >= 1.8 && p <= 2.2; };
    return {in(b.order) && in(m.order) && !b.degenerate && !m.degenerate,
            fmt("order base=%.4f monotonized=%.4f (range [1.8, 2.2])", b.order, m.order)};
}

Outcome criterion5() {
    const auto mesh = make_mesh_1d(0.0, 1.0, 9);
    const double d12 = max_norm_diff(solve_y_form(kFig1, mesh, kFig1Bc).solution.values,
                                     solve_monotonized(kFig1, mesh, kFig1Bc).solution.values);

    // single steps from random states, all three weights
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const auto F = evolution_rhs(kFig1);
    double dstep = 0.0;
    for (double sigma : {0.0, 0.5, 1.0}) {
        TimeStepConfig cfg;
        cfg.tau = sigma == 0.0 ? 1e-5 : 1e-2;
        cfg.sigma = sigma;
        for (int t = 0; t < 10; ++t) {
            MeshFunction1D v(mesh);
            for (auto& x : v.values) x = d(rng);
            const auto a = step_monotonized(v, F, kFig1Bc, cfg);
            const auto b = step_monotonized_alt(v, F, kFig1Bc, cfg);
            dstep = std::max({dstep, max_norm_diff(a.v.values, b.v.values), max_norm_diff(a.y.values, b.y.values)});
        }
    }

    TimeStepConfig cfg;
    cfg.tau = 0.05;
    cfg.sigma = 1.0;
    RunOptions opt;
    opt.max_steps = 20000;
    opt.steady_tol = 1e-12;
    const MeshFunction1D start(mesh, 0.0);
    const auto ta = march(start, F, kFig1Bc, cfg, StepForm::Monotonized, opt);
    const auto tb = march(start, F, kFig1Bc, cfg, StepForm::MonotonizedAlt, opt);
    const auto stationary = solve_monotonized(kFig1, mesh, kFig1Bc).solution.values;
    const double dmarch = max_norm_diff(ta.answer->values, tb.answer->values);
    const double dsteady = std::max(max_norm_diff(ta.answer->values, stationary),
                                    max_norm_diff(tb.answer->values, stationary));
    const bool ok = d12 <= 1e-10 && dstep <= 1e-10 && dmarch <= 1e-10 && ta.converged && tb.converged &&
                    dsteady <= 10 * opt.steady_tol;
    return {ok, fmt("direct y-form vs auxiliary %.3g; step forms %.3g (single steps), %.3g (trajectories); "
                    "steady vs stationary %.3g after %d steps (limit %.0e)",
                    d12, dstep, dmarch, dsteady, ta.steps, 10 * opt.steady_tol)};
}

Outcome criterion6() {
    FlowConfig cfg;  // N = 20, L = 1/30, rho = 1, nu = 1.002, dp = 1000, holes 6..15 counted from one
    const auto u = solve_steady(cfg, FlowVariant::Base);
    const auto m = solve_steady(cfg, FlowVariant::Monotonized);
    const FlowField& y = *m.y;
    const auto interior = Region3D::interior(cfg.N);
    const auto central = Region3D::cube(cfg.hole_first, cfg.hole_last);
    const std::size_t cu = count_extrema_3d(u.field.vx, interior), cy = count_extrema_3d(y.vx, interior);
    const auto su = find_extrema_3d(u.field.vx, central), sy = find_extrema_3d(y.vx, central);

    std::ostringstream os;
    os << "converged base=" << (u.converged ? "yes" : "no") << " (" << u.iterations << " it)"
       << " monotonized=" << (m.converged ? "yes" : "no") << " (" << m.iterations << " it); ";
    os << "interior vx extrema u=" << cu << " y=" << cy << " (published 316, 112); ";
    bool ratio_ok = false;
    if (cu > 0) {
        const double r = static_cast<double>(cy) / cu;
        ratio_ok = r <= 0.6;
        os << fmt("ratio %.3g (limit 0.6); ", r);
    } else {
        os << "ratio undefined; ";
    }
    bool sharp_ok = false;
    if (!su.empty() && !sy.empty()) {
        const auto au = sharpness_metrics(u.field.vx, su), ay = sharpness_metrics(y.vx, sy);
        sharp_ok = ay.a / au.a <= 0.6;
        os << fmt("central a(u)=%.3g a(y)=%.3g ratio %.3g (published 0.29, 0.11); ", au.a, ay.a, ay.a / au.a);
    } else {
        os << "central extrema u=" << su.size() << " y=" << sy.size() << ", sharpness undefined; ";
    }
    os << "interior p extrema u=" << count_extrema_3d(u.field.p, interior)
       << " y=" << count_extrema_3d(y.p, interior);
    return {u.converged && m.converged && ratio_ok && sharp_ok, os.str()};
}

oracle::Cube to_cube(const MeshFunction3D& u) {
    oracle::Cube c(u.mesh.N);
    std::size_t p = 0;
    for (int k = 0; k < c.N; ++k)
        for (int j = 0; j < c.N; ++j)
            for (int i = 0; i < c.N; ++i) c.v[i][j][k] = u.values[p++];
    return c;
}

Outcome criterion7() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::uniform_int_distribution<int> q(0, 3);
    int mismatches = 0, nonempty = 0;
    for (int t = 0; t < 200; ++t) {
        const int N = 3 + t % 3;
        MeshFunction3D u(make_mesh_3d(1.0, N));
        for (auto& v : u.values) v = t % 2 ? d(rng) : q(rng);
        const auto cube = to_cube(u);
        const auto region = Region3D::interior(N);
        const auto ref = oracle::extrema(cube, 1, N - 2);
        const auto found = find_extrema_3d(u, region);
        if (count_extrema_3d(u, region) != ref.size() || found.size() != ref.size()) {
            ++mismatches;
            continue;
        }
        if (ref.empty()) continue;
        ++nonempty;
        const auto s = sharpness_metrics(u, found);
        const auto [a, b] = oracle::sharpness(cube, ref);
        if (s.a != a || s.b != b) ++mismatches;
    }
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<double> u(25), w(25);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = d(rng);
            w[i] = u[i] + 0.05 * d(rng);
        }
        if (std::abs(max_step_change(u) - max_step_change(w)) > 2.0 * max_norm_diff(u, w) + 1e-15) ++violations;
    }
    return {mismatches == 0 && violations == 0,
            fmt("200 fields (%d with extrema): %d mismatches; 200 pairs: %d Lipschitz violations", nonempty,
                mismatches, violations)};
}

Outcome criterion8() {
    std::ostringstream os;
    bool ok = true;

    const auto m1 = make_mesh_1d(0.0, 1.0, 30);
    const double n1 = operator_norm_c(StencilOperator1D{Stencil1DKind::M, m1});
    const auto m3 = make_mesh_3d(1.0, 6);
    const double n3 = operator_norm_c(AveragingOperator3D{m3, ScalarBoundary::uniform(6, FaceRule::mirror())});
    ok = ok && std::abs(n1 - 1.0) < 1e-15 && std::abs(n3 - 1.0) < 1e-15;
    os << fmt("|M|=%.17g (1D) %.17g (3D); ", n1, n3);

    const auto c1 = apply_m_1d(MeshFunction1D(m1, 2.5), {2.5, 2.5});
    const auto c3 = apply_m_3d(MeshFunction3D(m3, 2.5));
    double cdev = 0.0;
    for (double v : c1.values) cdev = std::max(cdev, std::abs(v - 2.5));
    for (double v : c3.values) cdev = std::max(cdev, std::abs(v - 2.5));
    ok = ok && cdev <= 1e-15;
    os << fmt("constants moved by %.3g; ", cdev);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MeshFunction1D r1(m1);
    for (auto& v : r1.values) v = d(rng);
    MeshFunction3D r3(m3);
    for (auto& v : r3.values) v = d(rng);
    const double rt1 = max_norm_diff(solve_m_1d(apply_m_1d(r1, {0.1, 0.2}), {0.1, 0.2}).values, r1.values);
    const double rt3 = max_norm_diff(solve_m_3d(apply_m_3d(r3), 1e-10, 1000).values, r3.values);
    ok = ok && rt1 <= 1e-8 && rt3 <= 1e-8;
    os << fmt("round trips %.3g (1D) %.3g (3D); ", rt1, rt3);

    const auto lin = sample(m1, [](double x) { return 2 * x + 1; });
    const auto quad = sample(m1, [](double x) { return x * x; });
    double dd = 0.0;
    for (double v : apply_d1_1d(lin, {1.0, 3.0}).values) dd = std::max(dd, std::abs(v - 2.0));
    for (double v : apply_d2_1d(quad, {0.0, 1.0}).values) dd = std::max(dd, std::abs(v - 2.0));
    ok = ok && dd <= 1e-9;
    os << fmt("D1/D2 error %.3g; ", dd);

    auto f = [](double x) { return std::exp(x) * std::cos(2 * x); };
    auto err = [&](int n) {
        const auto mesh = make_mesh_1d(0.0, 1.0, n);
        const auto u = sample(mesh, f);
        return max_norm_diff(apply_m_1d(u, {f(0.0), f(1.0)}).values, u.values);
    };
    double worst = INFINITY;
    double prev = err(9);
    for (int n : {19, 39, 79, 159}) {
        const double e = err(n);
        worst = std::min(worst, std::log2(prev / e));
        prev = e;
    }
    ok = ok && worst >= 1.9;
    os << fmt("|Mu-u| order >= %.4f (limit 1.9)", worst);
    return {ok, os.str()};
}

}  // namespace

int main() {
    report(1, "fig1 qualitative reproduction", 1.0, criterion1);
    report(2, "auxiliary solution closeness", 1.0, criterion2);
    report(3, "closeness interval end-to-end", 1.0, criterion3);
    report(4, "convergence order", 10.0, criterion4);
    report(5, "form equivalences", 1.0, criterion5);
    report(6, "fig2 qualitative reproduction at N=20", 0.0, criterion6);
    report(7, "metrics oracle equivalence", 5.0, criterion7);
    report(8, "operator suite", 1.0, criterion8);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
