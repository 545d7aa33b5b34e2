#include <doctest.h>

#include <cmath>

#include "monoscheme/bvp1d.hpp"
#include "monoscheme/errors.hpp"
#include "monoscheme/metrics.hpp"
#include "monoscheme/stencil1d.hpp"
#include "oracles.hpp"

using namespace monoscheme;

namespace {

const SchemeCoefficients kFig1{10.0, -5.0, 30.0, -1.0};
const BoundaryData1D kFig1Bc{0.5, 0.5};

Mesh1D fig1_mesh() { return make_mesh_1d(0.0, 1.0, 9); }  // 11 points

// Closed-form discrete solutions through the characteristic roots of the
// recurrence, independent of any matrix solve.
std::vector<double> base_oracle(const SchemeCoefficients& c, const Mesh1D& m, const BoundaryData1D& bc) {
    const double h = m.h;
    return oracle::recurrence_solution(c.k3 - 0.5 * h * c.k2, h * h * c.k1 - 2 * c.k3, c.k3 + 0.5 * h * c.k2,
                                       -h * h * c.k0, m.n, bc.left, bc.right);
}

std::vector<double> aux_oracle(const SchemeCoefficients& c, const Mesh1D& m, const BoundaryData1D& bc) {
    const double h = m.h, q = h * h * c.k1;
    return oracle::recurrence_solution(c.k3 - 0.5 * h * c.k2 + 0.25 * q, 0.5 * q - 2 * c.k3,
                                       c.k3 + 0.5 * h * c.k2 + 0.25 * q, -h * h * c.k0, m.n, bc.left, bc.right);
}

std::vector<double> average_nodes(const std::vector<double>& v) {
    std::vector<double> y = v;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) y[i] = 0.25 * v[i - 1] + 0.5 * v[i] + 0.25 * v[i + 1];
    return y;
}

double diff_c(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("base scheme reproduces linears and quadratics") {
    for (int n : {1, 4, 13}) {
        auto m = make_mesh_1d(0.0, 1.0, n);
        auto s = solve_base({0, 0, 0, 1}, m, {0.0, 1.0});
        for (int i = 1; i <= n; ++i) CHECK(s.solution[i - 1] == doctest::Approx(m.x(i)).epsilon(1e-13));
        auto q = solve_base({-2, 0, 0, 1}, m, {0.0, 1.0});
        for (int i = 1; i <= n; ++i) CHECK(q.solution[i - 1] == doctest::Approx(m.x(i) * m.x(i)).epsilon(1e-12));
    }
}

TEST_CASE("monotonized scheme special cases") {
    auto m = make_mesh_1d(0.0, 1.0, 7);
    const SchemeCoefficients noK1{3.0, 0.0, 2.0, 1.0};
    auto u = solve_base(noK1, m, {1.0, -1.0});
    auto mono = solve_monotonized(noK1, m, {1.0, -1.0});
    REQUIRE(mono.auxiliary);
    CHECK(max_norm_diff(mono.auxiliary->values, u.solution.values) == 0.0);

    auto k = solve_monotonized({5, -1, 0, 1}, m, {5, 5});
    for (double v : k.auxiliary->values) CHECK(v == doctest::Approx(5.0).epsilon(1e-13));
    for (double v : k.solution.values) CHECK(v == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("fig1 setup against the characteristic-root oracle") {
    const auto m = fig1_mesh();
    const auto u = node_values(solve_base(kFig1, m, kFig1Bc));
    const auto mono = solve_monotonized(kFig1, m, kFig1Bc);
    const auto y = node_values(mono);
    const auto v = mono.auxiliary->with_boundary(kFig1Bc);

    const auto u_ref = base_oracle(kFig1, m, kFig1Bc);
    const auto v_ref = aux_oracle(kFig1, m, kFig1Bc);
    CHECK(diff_c(u, u_ref) <= 1e-12);
    CHECK(diff_c(v, v_ref) <= 1e-12);
    CHECK(diff_c(y, average_nodes(v_ref)) <= 1e-12);
}

TEST_CASE("fig1 regression values") {
    const auto m = fig1_mesh();
    const auto base = solve_base(kFig1, m, kFig1Bc);
    const auto mono = solve_monotonized(kFig1, m, kFig1Bc);
    const auto u = node_values(base);
    const auto y = node_values(mono);
    const auto ref = dense_reference(kFig1, m, kFig1Bc, 100);

    CHECK(max_step_change(u) == doctest::Approx(0.299871).epsilon(1e-5));
    CHECK(max_step_change(y) == doctest::Approx(0.200261).epsilon(1e-5));
    CHECK(max_step_change(y) < max_step_change(u));
    CHECK(diff_c(u, ref) == doctest::Approx(0.06925).epsilon(1e-3));
    CHECK(diff_c(y, ref) == doctest::Approx(0.03036).epsilon(1e-3));
    CHECK_FALSE(oscillates_point_to_point(y, 0, y.size() - 1));

    const double aux_gap = max_norm_diff(base.solution.values, mono.auxiliary->values) / max_norm(base.solution.values);
    CHECK(aux_gap == doctest::Approx(0.00345264).epsilon(1e-5));
    CHECK(aux_gap <= 0.05);

    CHECK(base.residual_c_norm <= 1e-14 * base.residual_scale);
    CHECK(mono.residual_c_norm <= 1e-14 * mono.residual_scale);
}

TEST_CASE("fig1 base solution on 11 points has a single interior extremum") {
    // The coarse base solution does not alternate over the interior: it
    // falls monotonically and dips once next to the right boundary.
    const auto u = node_values(solve_base(kFig1, fig1_mesh(), kFig1Bc));
    CHECK(count_extrema_1d(u) == 1);
    CHECK_FALSE(oscillates_point_to_point(u, 0, u.size() - 1));
    for (int i = 0; i < 9; ++i) CHECK(u[i + 1] < u[i]);
    CHECK(u[9] < u[10]);
}

TEST_CASE("closeness check on the fig1 solutions") {
    const auto m = fig1_mesh();
    const auto u = node_values(solve_base(kFig1, m, kFig1Bc));
    const auto v = solve_monotonized(kFig1, m, kFig1Bc).auxiliary->with_boundary(kFig1Bc);
    const auto r = check_closeness(
        u, v, [](std::span<const double> s) { return apply_m_nodes(s); },
        [](std::span<const double> s) { return max_step_change(s); });
    CHECK(r.premises_hold);
    CHECK(r.k1_inside);
    CHECK(r.K * r.normM * r.epsilon < r.k * r.delta);
    CHECK(r.k1 == doctest::Approx(0.66782).epsilon(1e-4));
}

TEST_CASE("direct y-form agrees with the auxiliary route") {
    const auto m = fig1_mesh();
    const auto a = solve_y_form(kFig1, m, kFig1Bc);
    const auto b = solve_monotonized(kFig1, m, kFig1Bc);
    CHECK(max_norm_diff(a.solution.values, b.solution.values) <= 1e-10);

    for (int n : {3, 20, 57}) {
        auto mm = make_mesh_1d(-1.0, 2.0, n);
        const SchemeCoefficients c{1.0, 2.0, -3.0, 0.5};
        CHECK(max_norm_diff(solve_y_form(c, mm, {0.3, -0.7}).solution.values,
                            solve_monotonized(c, mm, {0.3, -0.7}).solution.values) <= 1e-10);
    }

    // k1 = 0: y is M applied to the base solution
    const SchemeCoefficients noK1{4.0, 0.0, 1.0, 1.0};
    auto mm = make_mesh_1d(0.0, 1.0, 10);
    auto u = solve_base(noK1, mm, {0.0, 2.0});
    auto y = solve_y_form(noK1, mm, {0.0, 2.0});
    CHECK(max_norm_diff(y.solution.values, apply_m_1d(u.solution, {0.0, 2.0}).values) <= 1e-12);

    auto k = solve_y_form({5, -1, 0, 1}, mm, {5, 5});
    for (double v : k.solution.values) CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("singular schemes name the step") {
    auto m = make_mesh_1d(0.0, 1.0, 1);  // h = 0.5, single row
    try {
        solve_base({0.0, 8.0, 0.0, 1.0}, m, {0.0, 0.0});  // h^2 k1 - 2 k3 = 0
        FAIL("expected a singular scheme");
    } catch (const SingularSchemeError& e) {
        CHECK(e.h() == 0.5);
        CHECK(e.kind() == ErrorKind::SingularScheme);
    }
    CHECK_NOTHROW(solve_monotonized({0.0, 8.0, 0.0, 1.0}, m, {0.0, 0.0}));
    CHECK_THROWS_AS(solve_monotonized({0.0, 16.0, 0.0, 1.0}, m, {0.0, 0.0}), SingularSchemeError);
    CHECK_THROWS_AS(solve_base({1.0, 0.0, 0.0, 0.0}, m, {0.0, 0.0}), Error);
}

TEST_CASE("determinant scan") {
    CHECK(determinant_scan({0, 0, 0, 1}, std::vector<double>{}, {0.0, 1.0}).empty());

    const std::vector<double> hs{0.25, 0.125, 0.1, 1.0 / 64};
    for (const auto& e : determinant_scan({0, 0, 0, 1}, hs, {0.0, 1.0})) {
        CHECK_FALSE(e.flagged);
        CHECK(e.base.min_pivot > 1e-8);
        CHECK(e.monotonized.min_pivot > 1e-8);
    }

    std::vector<double> pow2;
    for (int p = 2; p <= 10; ++p) pow2.push_back(std::ldexp(1.0, -p));
    const auto scan = determinant_scan(kFig1, pow2, kFig1Bc);
    REQUIRE(scan.size() == pow2.size());
    for (const auto& e : scan) {
        CHECK(e.h == doctest::Approx(1.0 / (e.n + 1)));
        // compare with a dense determinant of the assembled matrices
        auto mesh = make_mesh_1d(0.0, 1.0, e.n);
        for (Scheme s : {Scheme::Base, Scheme::Monotonized}) {
            const auto sys = assemble_scheme(kFig1, mesh, kFig1Bc, s);
            oracle::Matrix a(e.n, std::vector<double>(e.n, 0.0));
            for (int r = 0; r < e.n; ++r) {
                a[r][r] = sys.matrix.diag[r];
                if (r > 0) a[r][r - 1] = sys.matrix.lower[r];
                if (r + 1 < e.n) a[r][r + 1] = sys.matrix.upper[r];
            }
            if (e.n > 60) continue;  // dense determinant under/overflows
            const double det = oracle::dense_det(a);
            const auto& ind = s == Scheme::Base ? e.base : e.monotonized;
            CHECK(ind.det_sign == (det > 0 ? 1 : -1));
            CHECK(ind.log_abs_det == doctest::Approx(std::log(std::abs(det))).epsilon(1e-9));
        }
    }
}

TEST_CASE("analytic solution") {
    auto lin = analytic_solution({0, 0, 0, 1}, {0.0, 1.0}, 0.0, 1.0);
    for (double x : {0.0, 0.3, 1.0}) CHECK(lin(x) == doctest::Approx(x));

    auto c5 = analytic_solution({5, -1, 0, 1}, {5, 5}, 0.0, 1.0);
    for (double x : {0.0, 0.5, 1.0}) CHECK(c5(x) == doctest::Approx(5.0));

    AnalyticSolution1D fig(kFig1, kFig1Bc, 0.0, 1.0);
    const double r1 = 15 + std::sqrt(220.0), r2 = 15 - std::sqrt(220.0);
    CHECK(std::max(fig.root_re(0), fig.root_re(1)) == doctest::Approx(r1));
    CHECK(std::min(fig.root_re(0), fig.root_re(1)) == doctest::Approx(r2));
    CHECK(fig.root_im(0) == 0.0);
    CHECK(fig(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fig(1.0) == doctest::Approx(0.5).epsilon(1e-12));
    for (double x = 0.0; x <= 1.0; x += 0.05) {
        const double terms = std::abs(kFig1.k0) + std::abs(kFig1.k1 * fig.value(x)) + std::abs(kFig1.k2 * fig.d1(x)) +
                             std::abs(kFig1.k3 * fig.d2(x));
        const double res = kFig1.k0 + kFig1.k1 * fig.value(x) + kFig1.k2 * fig.d1(x) + kFig1.k3 * fig.d2(x);
        CHECK(std::abs(res) <= 1e-10 * terms);
    }

    // complex roots: k3 l^2 + k1 = 0 with k1 = k3 pi^2 gives sin/cos
    AnalyticSolution1D osc({0.0, 1.0, 0.0, 1.0}, {0.0, std::sin(1.0)}, 0.0, 1.0);
    for (double x : {0.1, 0.4, 0.9}) CHECK(osc(x) == doctest::Approx(std::sin(x)).epsilon(1e-12));

    CHECK_THROWS_AS(AnalyticSolution1D({0.0, 1.0, 0.0, 1.0 / (M_PI * M_PI)}, {0.0, 0.0}, 0.0, 1.0), Error);
}

TEST_CASE("convergence order") {
    const std::vector<int> ns{20, 40, 80, 160};
    const SchemeCoefficients mild{1, -1, 1, 1};
    auto base = convergence_order(mild, {0.0, 1.0}, Scheme::Base, ns);
    auto mono = convergence_order(mild, {0.0, 1.0}, Scheme::Monotonized, ns);
    CHECK(base.order >= 1.8);
    CHECK(base.order <= 2.2);
    CHECK(mono.order >= 1.8);
    CHECK(mono.order <= 2.2);
    CHECK(base.converging);
    CHECK(mono.converging);
    CHECK_FALSE(base.degenerate);

    auto exact = convergence_order({-2, 0, 0, 1}, {0.0, 1.0}, Scheme::Base, ns);
    CHECK(exact.degenerate);
    for (double e : exact.error) CHECK(e < 1e-12);

    CHECK_THROWS_AS(convergence_order(mild, {0.0, 1.0}, Scheme::Base, std::vector<int>{20, 40}), Error);
    CHECK_THROWS_AS(convergence_order(mild, {0.0, 1.0}, Scheme::Base, std::vector<int>{20, 10, 40}), Error);
}

TEST_CASE("interpolation") {
    const std::vector<double> x{0.0, 1.0, 3.0}, y{0.0, 2.0, -2.0};
    CHECK(interpolate_linear(x, y, 0.5) == 1.0);
    CHECK(interpolate_linear(x, y, 2.0) == 0.0);
    CHECK(interpolate_linear(x, y, 3.0) == -2.0);
}
