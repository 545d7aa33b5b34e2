// Three-point difference operators on a Mesh1D.
//
//   D1: (u_{i+1} - u_{i-1}) / 2h
//   D2: (u_{i+1} - 2u_i + u_{i-1}) / h^2
//   M : (u_{i+1} + 2u_i + u_{i-1}) / 4     (monotonizing average)
//
// Rows 1 and n read u_0 and u_{n+1} from BoundaryData1D, so every operator is
// affine in the unknowns: Op(u) = A u + (boundary contribution).
#pragma once

#include <array>
#include <span>
#include <vector>

#include "monoscheme/grid.hpp"
#include "monoscheme/tridiagonal.hpp"

namespace monoscheme {

enum class Stencil1DKind { D1, D2, M, Identity };

struct StencilOperator1D {
    Stencil1DKind kind = Stencil1DKind::Identity;
    Mesh1D mesh;

    /// 1/(2h) for D1, 1/h^2 for D2, 1 otherwise.
    double scale() const noexcept;
    /// Unscaled (lower, centre, upper) weights.
    std::array<double, 3> weights() const noexcept;
    /// The linear part on the n unknowns, scale included.
    TridiagonalMatrix matrix() const;

    MeshFunction1D apply(const MeshFunction1D& u, const BoundaryData1D& bc) const;
};

MeshFunction1D apply_d1_1d(const MeshFunction1D& u, const BoundaryData1D& bc);
MeshFunction1D apply_d2_1d(const MeshFunction1D& u, const BoundaryData1D& bc);
MeshFunction1D apply_m_1d(const MeshFunction1D& u, const BoundaryData1D& bc);

/// M on a full node sequence u_0..u_{n+1}; the two end values are kept.
std::vector<double> apply_m_nodes(std::span<const double> u);

/// Solves apply_m_1d(a, bc) = b for a by a direct tridiagonal solve.
MeshFunction1D solve_m_1d(const MeshFunction1D& b, const BoundaryData1D& bc);

/// Max absolute row sum of the assembled n x n matrix.
double operator_norm_c(const StencilOperator1D& op);

}  // namespace monoscheme
