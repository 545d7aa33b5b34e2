#include "monoscheme/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monoscheme/errors.hpp"

namespace monoscheme {

Mesh1D make_mesh_1d(double a, double b, int n) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b) || n < 1) {
        std::ostringstream os;
        os << "invalid 1D mesh: [" << a << ", " << b << "], n = " << n;
        throw Error(ErrorKind::InvalidMesh, os.str());
    }
    return Mesh1D{a, b, n, (b - a) / (n + 1)};
}

Mesh3D make_mesh_3d(double L, int N) {
    if (!(std::isfinite(L) && L > 0.0) || N < 2) {
        std::ostringstream os;
        os << "invalid 3D mesh: L = " << L << ", N = " << N << " (need L > 0, N >= 2)";
        throw Error(ErrorKind::InvalidMesh, os.str());
    }
    return Mesh3D{L, N, L / N};
}

std::size_t flat_index(int i, int j, int k, int N) {
    if (i < 0 || j < 0 || k < 0 || i >= N || j >= N || k >= N) {
        std::ostringstream os;
        os << "cell (" << i << ", " << j << ", " << k << ") outside 0.." << N - 1;
        throw Error(ErrorKind::Index, os.str());
    }
    const auto n = static_cast<std::size_t>(N);
    return static_cast<std::size_t>(i) + n * static_cast<std::size_t>(j) + n * n * static_cast<std::size_t>(k);
}

CellIndex cell_index(std::size_t flat, int N) {
    const auto n = static_cast<std::size_t>(N);
    if (N < 1 || flat >= n * n * n) {
        throw Error(ErrorKind::Index, "flat index " + std::to_string(flat) + " outside mesh");
    }
    return CellIndex{static_cast<int>(flat % n), static_cast<int>((flat / n) % n),
                     static_cast<int>(flat / (n * n))};
}

MeshFunction1D::MeshFunction1D(const Mesh1D& m, std::vector<double> v) : mesh(m), values(std::move(v)) {
    if (values.size() != static_cast<std::size_t>(m.n)) {
        throw Error(ErrorKind::Index, "1D mesh function length does not match mesh");
    }
}

std::vector<double> MeshFunction1D::with_boundary(const BoundaryData1D& bc) const {
    std::vector<double> full;
    full.reserve(values.size() + 2);
    full.push_back(bc.left);
    full.insert(full.end(), values.begin(), values.end());
    full.push_back(bc.right);
    return full;
}

MeshFunction3D::MeshFunction3D(const Mesh3D& m, std::vector<double> v) : mesh(m), values(std::move(v)) {
    if (values.size() != m.cell_count()) {
        throw Error(ErrorKind::Index, "3D mesh function length does not match mesh");
    }
}

MeshFunction1D sample(const Mesh1D& mesh, const std::function<double(double)>& f) {
    MeshFunction1D u(mesh);
    for (int p = 0; p < mesh.n; ++p) u.values[p] = f(mesh.x(p + 1));
    return u;
}

MeshFunction3D sample(const Mesh3D& mesh, const std::function<double(double, double, double)>& f) {
    MeshFunction3D u(mesh);
    for (int k = 0; k < mesh.N; ++k)
        for (int j = 0; j < mesh.N; ++j)
            for (int i = 0; i < mesh.N; ++i)
                u(i, j, k) = f(mesh.center(i), mesh.center(j), mesh.center(k));
    return u;
}

double max_norm(std::span<const double> u) noexcept {
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return m;
}

double max_norm_diff(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw Error(ErrorKind::Index, "max_norm_diff: size mismatch");
    double m = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) m = std::max(m, std::abs(u[p] - v[p]));
    return m;
}

}  // namespace monoscheme
