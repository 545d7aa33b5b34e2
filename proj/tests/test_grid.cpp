#include <doctest.h>

#include <cmath>

#include "monoscheme/errors.hpp"
#include "monoscheme/grid.hpp"

using namespace monoscheme;

TEST_CASE("make_mesh_3d step and cell count") {
    auto m = make_mesh_3d(1.0, 2);
    CHECK(m.h == 0.5);
    CHECK(m.cell_count() == 8);

    auto f = make_mesh_3d(1.0 / 30.0, 20);
    CHECK(f.h == doctest::Approx(1.0 / 600.0).epsilon(1e-15));
    CHECK(f.cell_count() == 8000);
    CHECK(std::abs(f.h * f.N - f.L) < 1e-16);
}

TEST_CASE("invalid meshes are rejected") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Parse;
    };
    CHECK(kind_of([] { make_mesh_3d(1.0, 0); }) == ErrorKind::InvalidMesh);
    CHECK(kind_of([] { make_mesh_3d(-1.0, 4); }) == ErrorKind::InvalidMesh);
    CHECK(kind_of([] { make_mesh_1d(1.0, 0.0, 4); }) == ErrorKind::InvalidMesh);
    CHECK(kind_of([] { make_mesh_1d(0.0, 1.0, 0); }) == ErrorKind::InvalidMesh);
}

TEST_CASE("1D nodes") {
    auto m = make_mesh_1d(0.0, 1.0, 9);
    CHECK(m.h == doctest::Approx(0.1));
    CHECK(m.x(0) == 0.0);
    CHECK(m.x(10) == 1.0);
    for (int i = 0; i <= 10; ++i) CHECK(m.x(i) == doctest::Approx(0.1 * i));
    auto odd = make_mesh_1d(-2.0, 5.0, 6);
    CHECK(std::abs(odd.h * 7 - 7.0) < 1e-15);
}

TEST_CASE("flat_index examples") {
    CHECK(flat_index(0, 0, 0, 20) == 0);
    CHECK(flat_index(19, 19, 19, 20) == 7999);
    CHECK(flat_index(1, 2, 3, 4) == 57);
    CHECK_THROWS_AS(flat_index(4, 0, 0, 4), Error);
    CHECK_THROWS_AS(flat_index(0, -1, 0, 4), Error);
    CHECK_THROWS_AS(cell_index(64, 4), Error);
}

TEST_CASE("flat_index and cell_index are inverse, exhaustively up to N = 8") {
    for (int N = 1; N <= 8; ++N) {
        std::size_t expected = 0;
        for (int k = 0; k < N; ++k) {
            for (int j = 0; j < N; ++j) {
                for (int i = 0; i < N; ++i, ++expected) {
                    REQUIRE(flat_index(i, j, k, N) == expected);
                    const CellIndex c = cell_index(expected, N);
                    REQUIRE(c == CellIndex{i, j, k});
                }
            }
        }
    }
}

TEST_CASE("sample") {
    auto m = make_mesh_1d(0.0, 1.0, 3);
    auto u = sample(m, [](double x) { return x; });
    REQUIRE(u.size() == 3);
    CHECK(u[0] == 0.25);
    CHECK(u[1] == 0.5);
    CHECK(u[2] == 0.75);

    auto z = sample(m, [](double) { return 0.0; });
    for (double v : z.values) CHECK(v == 0.0);

    auto m3 = make_mesh_3d(1.0, 2);
    auto w = sample(m3, [](double x, double, double) { return x; });
    for (int k = 0; k < 2; ++k) {
        for (int j = 0; j < 2; ++j) {
            CHECK(w(0, j, k) == 0.25);
            CHECK(w(1, j, k) == 0.75);
        }
    }
}

TEST_CASE("with_boundary and norms") {
    auto m = make_mesh_1d(0.0, 1.0, 2);
    MeshFunction1D u(m, std::vector<double>{3.0, -4.0});
    auto all = u.with_boundary({1.0, 2.0});
    CHECK(all == std::vector<double>{1.0, 3.0, -4.0, 2.0});
    CHECK(max_norm(u.values) == 4.0);
    CHECK(max_norm(std::vector<double>{}) == 0.0);
    CHECK(max_norm_diff(std::vector<double>{1, 2}, std::vector<double>{1.5, -1}) == 3.0);
    CHECK_THROWS_AS(max_norm_diff(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS(MeshFunction1D(m, std::vector<double>{1.0}), Error);
}
