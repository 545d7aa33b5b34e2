// Regular 1D and 3D meshes and the scalar mesh functions living on them.
//
// 1D: node-centred. Nodes x_i = a + i*h, i = 0..n+1; the n unknowns sit at
// i = 1..n and the two end nodes carry Dirichlet data (BoundaryData1D).
//
// 3D: cell-centred on a cube of side L split into N^3 cells. Cell (i,j,k) has
// its centre at ((i+1/2)h, (j+1/2)h, (k+1/2)h). Flat storage is i-fastest:
// flat = i + N*j + N*N*k.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace monoscheme {

struct Mesh1D {
    double a = 0.0;
    double b = 1.0;
    int n = 1;  ///< interior unknowns
    double h = 0.5;

    /// Node coordinate for i in 0..n+1.
    double x(int i) const noexcept { return i == n + 1 ? b : a + i * h; }
};

/// Throws Error(InvalidMesh) unless a < b and n >= 1.
Mesh1D make_mesh_1d(double a, double b, int n);

struct BoundaryData1D {
    double left = 0.0;   ///< u_0
    double right = 0.0;  ///< u_{n+1}
};

struct Mesh3D {
    double L = 1.0;
    int N = 2;
    double h = 0.5;

    std::size_t cell_count() const noexcept {
        return static_cast<std::size_t>(N) * N * N;
    }
    double center(int i) const noexcept { return (i + 0.5) * h; }
};

/// Throws Error(InvalidMesh) unless L > 0 and N >= 2.
Mesh3D make_mesh_3d(double L, int N);

struct CellIndex {
    int i = 0;
    int j = 0;
    int k = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// i + N*j + N^2*k. Throws Error(Index) if any index is outside 0..N-1.
std::size_t flat_index(int i, int j, int k, int N);

/// Inverse of flat_index. Throws Error(Index) if flat >= N^3.
CellIndex cell_index(std::size_t flat, int N);

struct MeshFunction1D {
    Mesh1D mesh;
    std::vector<double> values;  ///< size mesh.n, entry p is node p+1

    MeshFunction1D() = default;
    explicit MeshFunction1D(const Mesh1D& m, double fill = 0.0)
        : mesh(m), values(static_cast<std::size_t>(m.n), fill) {}
    MeshFunction1D(const Mesh1D& m, std::vector<double> v);

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t p) { return values[p]; }
    double operator[](std::size_t p) const { return values[p]; }

    /// The n+2 node values u_0..u_{n+1}, boundary values taken from bc.
    std::vector<double> with_boundary(const BoundaryData1D& bc) const;
};

struct MeshFunction3D {
    Mesh3D mesh;
    std::vector<double> values;  ///< size N^3, i-fastest

    MeshFunction3D() = default;
    explicit MeshFunction3D(const Mesh3D& m, double fill = 0.0)
        : mesh(m), values(m.cell_count(), fill) {}
    MeshFunction3D(const Mesh3D& m, std::vector<double> v);

    std::size_t size() const noexcept { return values.size(); }
    double& operator()(int i, int j, int k) {
        return values[static_cast<std::size_t>(i) + mesh.N * (j + static_cast<std::size_t>(mesh.N) * k)];
    }
    double operator()(int i, int j, int k) const {
        return values[static_cast<std::size_t>(i) + mesh.N * (j + static_cast<std::size_t>(mesh.N) * k)];
    }
};

MeshFunction1D sample(const Mesh1D& mesh, const std::function<double(double)>& f);
MeshFunction3D sample(const Mesh3D& mesh, const std::function<double(double, double, double)>& f);

/// Max-norm (C-norm) of a vector; 0 for an empty one.
double max_norm(std::span<const double> u) noexcept;

/// ||u - v||_C. Sizes must match; throws Error(Index) otherwise.
double max_norm_diff(std::span<const double> u, std::span<const double> v);

}  // namespace monoscheme
