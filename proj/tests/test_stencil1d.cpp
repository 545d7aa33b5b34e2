#include <doctest.h>

#include <cmath>
#include <random>

#include "monoscheme/errors.hpp"
#include "monoscheme/grid.hpp"
#include "monoscheme/stencil1d.hpp"

using namespace monoscheme;

TEST_CASE("D1 is exact on linears") {
    for (int n : {1, 5, 17}) {
        auto m = make_mesh_1d(-1.0, 2.0, n);
        auto u = sample(m, [](double x) { return 3.0 * x - 1.0; });
        auto d = apply_d1_1d(u, {-4.0, 5.0});
        for (double v : d.values) CHECK(v == doctest::Approx(3.0).epsilon(1e-13));
    }
    auto m = make_mesh_1d(0.0, 1.0, 6);
    auto c = apply_d1_1d(MeshFunction1D(m, 2.5), {2.5, 2.5});
    for (double v : c.values) CHECK(v == 0.0);
    auto one = make_mesh_1d(0.0, 1.0, 1);
    CHECK(apply_d1_1d(MeshFunction1D(one, std::vector<double>{5.0}), {2.0, 8.0})[0] == 6.0);
}

TEST_CASE("D2 is exact on quadratics") {
    auto m = make_mesh_1d(0.0, 1.0, 9);
    auto u = sample(m, [](double x) { return x * x; });
    auto d = apply_d2_1d(u, {0.0, 1.0});
    for (double v : d.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-11));
    auto lin = apply_d2_1d(sample(m, [](double x) { return x; }), {0.0, 1.0});
    for (double v : lin.values) CHECK(std::abs(v) < 1e-11);
    auto one = make_mesh_1d(0.0, 1.0, 1);
    CHECK(apply_d2_1d(MeshFunction1D(one, std::vector<double>{5.0}), {2.0, 8.0})[0] == 0.0);
}

TEST_CASE("M examples") {
    auto m = make_mesh_1d(0.0, 1.0, 3);
    auto c = apply_m_1d(MeshFunction1D(m, 7.0), {7.0, 7.0});
    for (double v : c.values) CHECK(v == 7.0);
    auto bump = apply_m_1d(MeshFunction1D(m, std::vector<double>{0.0, 1.0, 0.0}), {0.0, 0.0});
    CHECK(bump[1] == 0.5);

    // alternating (-1)^i on nodes 0..n+1
    auto big = make_mesh_1d(0.0, 1.0, 8);
    std::vector<double> alt(8);
    for (int p = 0; p < 8; ++p) alt[p] = ((p + 1) % 2 == 0) ? 1.0 : -1.0;
    auto z = apply_m_1d(MeshFunction1D(big, alt), {1.0, -1.0});
    for (double v : z.values) CHECK(v == 0.0);

    const std::vector<double> nodes{1.0, -1.0, 1.0, -1.0};
    const auto mn = apply_m_nodes(nodes);
    CHECK(mn == std::vector<double>{1.0, 0.0, 0.0, -1.0});
}

TEST_CASE("solve_m_1d") {
    auto one = make_mesh_1d(0.0, 1.0, 1);
    CHECK(solve_m_1d(MeshFunction1D(one, std::vector<double>{1.0}), {0.0, 0.0})[0] == doctest::Approx(2.0));

    auto m = make_mesh_1d(0.0, 1.0, 12);
    auto k = solve_m_1d(MeshFunction1D(m, -3.0), {-3.0, -3.0});
    for (double v : k.values) CHECK(v == doctest::Approx(-3.0).epsilon(1e-14));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto mm = make_mesh_1d(0.0, 1.0, 1 + trial);
        MeshFunction1D c(mm);
        for (auto& v : c.values) v = d(rng);
        const BoundaryData1D bc{d(rng), d(rng)};
        auto back = solve_m_1d(apply_m_1d(c, bc), bc);
        REQUIRE(max_norm_diff(back.values, c.values) <= 1e-12 * std::max(1.0, max_norm(c.values)));
    }
}

TEST_CASE("operator norms") {
    auto m = make_mesh_1d(0.0, 1.1, 10);  // h = 0.1
    CHECK(operator_norm_c(StencilOperator1D{Stencil1DKind::M, m}) == 1.0);
    CHECK(operator_norm_c(StencilOperator1D{Stencil1DKind::D2, m}) == doctest::Approx(400.0));
    CHECK(operator_norm_c(StencilOperator1D{Stencil1DKind::D1, m}) == doctest::Approx(1.0 / 0.1));
    CHECK(operator_norm_c(StencilOperator1D{Stencil1DKind::Identity, m}) == 1.0);
}

TEST_CASE("StencilOperator1D agrees with the free functions") {
    auto m = make_mesh_1d(0.0, 2.0, 7);
    auto u = sample(m, [](double x) { return std::sin(3 * x); });
    const BoundaryData1D bc{0.0, std::sin(6.0)};
    for (auto kind : {Stencil1DKind::D1, Stencil1DKind::D2, Stencil1DKind::M}) {
        StencilOperator1D op{kind, m};
        auto a = op.apply(u, bc);
        auto b = kind == Stencil1DKind::D1 ? apply_d1_1d(u, bc)
                 : kind == Stencil1DKind::D2 ? apply_d2_1d(u, bc)
                                             : apply_m_1d(u, bc);
        CHECK(max_norm_diff(a.values, b.values) < 1e-12);
        // the linear part plus the boundary contribution reproduces apply
        auto lin = op.matrix().multiply(u.values);
        auto w = op.weights();
        lin.front() += op.scale() * w[0] * bc.left;
        lin.back() += op.scale() * w[2] * bc.right;
        CHECK(max_norm_diff(lin, a.values) < 1e-10);
    }
}

TEST_CASE("||Mu - u|| decays at second order") {
    auto err = [](int n) {
        auto m = make_mesh_1d(0.0, 1.0, n);
        auto f = [](double x) { return std::exp(x) * std::cos(2 * x); };
        auto u = sample(m, f);
        auto mu = apply_m_1d(u, {f(0.0), f(1.0)});
        return max_norm_diff(mu.values, u.values);
    };
    double prev = err(9);
    for (int n : {19, 39, 79, 159}) {
        const double e = err(n);
        CHECK(std::log2(prev / e) >= 1.9);
        prev = e;
    }
}
