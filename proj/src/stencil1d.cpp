#include "monoscheme/stencil1d.hpp"

#include "monoscheme/errors.hpp"

namespace monoscheme {

double StencilOperator1D::scale() const noexcept {
    switch (kind) {
        case Stencil1DKind::D1: return 1.0 / (2.0 * mesh.h);
        case Stencil1DKind::D2: return 1.0 / (mesh.h * mesh.h);
        default: return 1.0;
    }
}

std::array<double, 3> StencilOperator1D::weights() const noexcept {
    switch (kind) {
        case Stencil1DKind::D1: return {-1.0, 0.0, 1.0};
        case Stencil1DKind::D2: return {1.0, -2.0, 1.0};
        case Stencil1DKind::M: return {0.25, 0.5, 0.25};
        case Stencil1DKind::Identity: break;
    }
    return {0.0, 1.0, 0.0};
}

TridiagonalMatrix StencilOperator1D::matrix() const {
    const auto [lo, di, up] = weights();
    const double s = scale();
    return TridiagonalMatrix::toeplitz(mesh.n, s * lo, s * di, s * up);
}

MeshFunction1D StencilOperator1D::apply(const MeshFunction1D& u, const BoundaryData1D& bc) const {
    const auto [lo, di, up] = weights();
    const double s = scale();
    const std::vector<double> full = u.with_boundary(bc);
    MeshFunction1D out(u.mesh);
    for (std::size_t p = 0; p < u.size(); ++p) {
        out[p] = s * (lo * full[p] + di * full[p + 1] + up * full[p + 2]);
    }
    return out;
}

MeshFunction1D apply_d1_1d(const MeshFunction1D& u, const BoundaryData1D& bc) {
    return StencilOperator1D{Stencil1DKind::D1, u.mesh}.apply(u, bc);
}

MeshFunction1D apply_d2_1d(const MeshFunction1D& u, const BoundaryData1D& bc) {
    return StencilOperator1D{Stencil1DKind::D2, u.mesh}.apply(u, bc);
}

MeshFunction1D apply_m_1d(const MeshFunction1D& u, const BoundaryData1D& bc) {
    return StencilOperator1D{Stencil1DKind::M, u.mesh}.apply(u, bc);
}

std::vector<double> apply_m_nodes(std::span<const double> u) {
    std::vector<double> out(u.begin(), u.end());
    for (std::size_t i = 1; i + 1 < u.size(); ++i) out[i] = 0.25 * (u[i - 1] + 2.0 * u[i] + u[i + 1]);
    return out;
}

MeshFunction1D solve_m_1d(const MeshFunction1D& b, const BoundaryData1D& bc) {
    const StencilOperator1D m{Stencil1DKind::M, b.mesh};
    std::vector<double> rhs = b.values;
    rhs.front() -= 0.25 * bc.left;
    rhs.back() -= 0.25 * bc.right;
    const TridiagonalLU lu(m.matrix());
    if (lu.singular()) throw Error(ErrorKind::Solver, "solve_m_1d: singular averaging matrix");
    return MeshFunction1D(b.mesh, lu.solve(rhs));
}

double operator_norm_c(const StencilOperator1D& op) { return op.matrix().norm_c(); }

}  // namespace monoscheme
