#include "monoscheme/stencil3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monoscheme/errors.hpp"

namespace monoscheme {

namespace {

constexpr double kSelfWeight = 0.5;
constexpr double kNeighbourWeight = 1.0 / 12.0;

void check_same_size(const MeshFunction3D& u, const ScalarBoundary& bc, const char* who) {
    if (bc.N() != u.mesh.N) {
        std::ostringstream os;
        os << who << ": boundary closure for N = " << bc.N() << " applied to mesh with N = " << u.mesh.N;
        throw Error(ErrorKind::Configuration, os.str());
    }
}

// Weighted sum over the six neighbours in padded storage.
template <class Kernel>
MeshFunction3D padded_map(const MeshFunction3D& u, const ScalarBoundary& bc, const char* who, Kernel&& kernel) {
    check_same_size(u, bc, who);
    const PaddedField pu(u, bc);
    MeshFunction3D out(u.mesh);
    const int N = u.mesh.N;
    std::size_t flat = 0;
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i, ++flat) out.values[flat] = kernel(pu, pu.at(i, j, k));
    return out;
}

std::size_t axis_stride(int N, Axis a) noexcept {
    const auto P = static_cast<std::size_t>(N + 2);
    return a == Axis::X ? 1 : (a == Axis::Y ? P : P * P);
}

}  // namespace

ScalarBoundary::ScalarBoundary(int N) : N_(N) {
    for (auto& f : faces_) f.assign(static_cast<std::size_t>(N) * N, FaceRule{});
}

ScalarBoundary ScalarBoundary::uniform(int N, FaceRule rule) {
    ScalarBoundary b(N);
    for (int f = 0; f < 6; ++f) b.set_face(static_cast<Face>(f), rule);
    return b;
}

void ScalarBoundary::set_face(Face face, FaceRule rule) { set_patch(face, 0, N_ - 1, 0, N_ - 1, rule); }

void ScalarBoundary::set_patch(Face face, int a0, int a1, int b0, int b1, FaceRule rule) {
    if (a0 < 0 || b0 < 0 || a1 >= N_ || b1 >= N_ || a0 > a1 || b0 > b1) {
        throw Error(ErrorKind::Configuration, "boundary patch outside face");
    }
    auto& cells = faces_[static_cast<int>(face)];
    for (int b = b0; b <= b1; ++b)
        for (int a = a0; a <= a1; ++a) cells[static_cast<std::size_t>(a) + static_cast<std::size_t>(N_) * b] = rule;
}

void ScalarBoundary::validate(const char* who) const {
    for (int f = 0; f < 6; ++f) {
        for (const FaceRule& r : faces_[f]) {
            if (r.rule == GhostRule::Unset) {
                std::ostringstream os;
                os << who << ": face " << f << " has cells without a boundary rule";
                throw Error(ErrorKind::Configuration, os.str());
            }
        }
    }
}

ScalarBoundary ScalarBoundary::homogeneous() const {
    ScalarBoundary h = *this;
    for (auto& f : h.faces_)
        for (FaceRule& r : f)
            if (r.rule == GhostRule::Dirichlet) r.value = 0.0;
    return h;
}

bool ScalarBoundary::has_rule(GhostRule rule) const noexcept {
    for (const auto& f : faces_)
        for (const FaceRule& r : f)
            if (r.rule == rule) return true;
    return false;
}

double ghost_value(const FaceRule& rule, double inside, double inner) {
    switch (rule.rule) {
        case GhostRule::Dirichlet: return 2.0 * rule.value - inside;
        case GhostRule::ZeroNormalDerivative: return inside;
        case GhostRule::OneSided: return 2.0 * inside - inner;
        case GhostRule::Unset: break;
    }
    throw Error(ErrorKind::Configuration, "boundary cell face without a boundary rule");
}

PaddedField::PaddedField(const MeshFunction3D& u, const ScalarBoundary& bc) : N_(u.mesh.N) {
    check_same_size(u, bc, "PaddedField");
    const int N = N_;
    const auto P = static_cast<std::size_t>(N + 2);
    data_.assign(P * P * P, 0.0);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) data_[at(i, j, k)] = u(i, j, k);

    for (int b = 0; b < N; ++b) {
        for (int a = 0; a < N; ++a) {
            data_[at(-1, a, b)] = ghost_value(bc.rule(Face::XMin, a, b), u(0, a, b), u(1, a, b));
            data_[at(N, a, b)] = ghost_value(bc.rule(Face::XMax, a, b), u(N - 1, a, b), u(N - 2, a, b));
            data_[at(a, -1, b)] = ghost_value(bc.rule(Face::YMin, a, b), u(a, 0, b), u(a, 1, b));
            data_[at(a, N, b)] = ghost_value(bc.rule(Face::YMax, a, b), u(a, N - 1, b), u(a, N - 2, b));
            data_[at(a, b, -1)] = ghost_value(bc.rule(Face::ZMin, a, b), u(a, b, 0), u(a, b, 1));
            data_[at(a, b, N)] = ghost_value(bc.rule(Face::ZMax, a, b), u(a, b, N - 1), u(a, b, N - 2));
        }
    }
}

std::size_t PaddedField::stride(Axis a) const noexcept { return axis_stride(N_, a); }

MeshFunction3D grad_3d(const MeshFunction3D& u, Axis axis, const ScalarBoundary& bc) {
    const double inv2h = 1.0 / (2.0 * u.mesh.h);
    const std::size_t s = axis_stride(u.mesh.N, axis);
    return padded_map(u, bc, "grad_3d", [&](const PaddedField& p, std::size_t c) {
        return (p[c + s] - p[c - s]) * inv2h;
    });
}

MeshFunction3D second_derivative_3d(const MeshFunction3D& u, Axis axis, const ScalarBoundary& bc) {
    const double invh2 = 1.0 / (u.mesh.h * u.mesh.h);
    const std::size_t s = axis_stride(u.mesh.N, axis);
    return padded_map(u, bc, "second_derivative_3d", [&](const PaddedField& p, std::size_t c) {
        return (p[c + s] - 2.0 * p[c] + p[c - s]) * invh2;
    });
}

MeshFunction3D laplacian_3d(const MeshFunction3D& u, const ScalarBoundary& bc) {
    const double invh2 = 1.0 / (u.mesh.h * u.mesh.h);
    const auto P = static_cast<std::size_t>(u.mesh.N + 2);
    const std::size_t sy = P, sz = P * P;
    return padded_map(u, bc, "laplacian_3d", [&](const PaddedField& p, std::size_t c) {
        return ((p[c + 1] + p[c - 1]) + (p[c + sy] + p[c - sy]) + (p[c + sz] + p[c - sz]) - 6.0 * p[c]) * invh2;
    });
}

MeshFunction3D div_3d(const MeshFunction3D& vx, const MeshFunction3D& vy, const MeshFunction3D& vz,
                      const BoundaryPolicy3D& policy) {
    MeshFunction3D d = grad_3d(vx, Axis::X, policy.vx);
    const MeshFunction3D dy = grad_3d(vy, Axis::Y, policy.vy);
    const MeshFunction3D dz = grad_3d(vz, Axis::Z, policy.vz);
    for (std::size_t c = 0; c < d.size(); ++c) d.values[c] = d.values[c] + dy.values[c] + dz.values[c];
    return d;
}

MeshFunction3D AveragingOperator3D::apply(const MeshFunction3D& u) const {
    const auto P = static_cast<std::size_t>(u.mesh.N + 2);
    const std::size_t sy = P, sz = P * P;
    return padded_map(u, boundary, "apply_m_3d", [&](const PaddedField& p, std::size_t c) {
        return kSelfWeight * p[c] +
               kNeighbourWeight * ((p[c + 1] + p[c - 1]) + (p[c + sy] + p[c - sy]) + (p[c + sz] + p[c - sz]));
    });
}

MeshFunction3D apply_m_3d(const MeshFunction3D& u) {
    return AveragingOperator3D{u.mesh, ScalarBoundary::uniform(u.mesh.N, FaceRule::mirror())}.apply(u);
}

MeshFunction3D apply_m_3d(const MeshFunction3D& u, const ScalarBoundary& bc) {
    return AveragingOperator3D{u.mesh, bc}.apply(u);
}

MeshFunction3D solve_m_3d(const MeshFunction3D& b, const ScalarBoundary& bc, double tol, int max_iters,
                          MSolveStats* stats) {
    check_same_size(b, bc, "solve_m_3d");
    if (!(tol > 0.0)) throw Error(ErrorKind::Configuration, "solve_m_3d: tolerance must be positive");
    if (bc.has_rule(GhostRule::OneSided)) {
        throw Error(ErrorKind::Configuration, "solve_m_3d: one-sided closure gives a non-symmetric system");
    }
    bc.validate("solve_m_3d");

    const AveragingOperator3D affine{b.mesh, bc};
    const AveragingOperator3D linear{b.mesh, bc.homogeneous()};
    const std::size_t n = b.size();

    // A a = b - M(0)
    const MeshFunction3D offset = affine.apply(MeshFunction3D(b.mesh));
    std::vector<double> rhs(n);
    for (std::size_t c = 0; c < n; ++c) rhs[c] = b.values[c] - offset.values[c];

    auto dot = [n](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += x[c] * y[c];
        return s;
    };

    MeshFunction3D a(b.mesh);
    int iters = 0;
    double true_residual = max_norm(rhs);
    while (true) {
        // (Re)start from the current iterate with the true residual.
        const MeshFunction3D Aa = linear.apply(a);
        std::vector<double> r(n);
        for (std::size_t c = 0; c < n; ++c) r[c] = rhs[c] - Aa.values[c];
        true_residual = max_norm(r);
        if (true_residual <= tol) break;
        if (iters >= max_iters) {
            std::ostringstream os;
            os << "solve_m_3d: no convergence in " << max_iters << " iterations, residual " << true_residual;
            throw IterationError(os.str(), true_residual, iters);
        }
        MeshFunction3D p(b.mesh, r);
        double rr = dot(r, r);
        while (iters < max_iters) {
            const MeshFunction3D Ap = linear.apply(p);
            const double pAp = dot(p.values, Ap.values);
            if (!(pAp > 0.0)) throw Error(ErrorKind::Solver, "solve_m_3d: averaging matrix not positive definite");
            const double alpha = rr / pAp;
            for (std::size_t c = 0; c < n; ++c) {
                a.values[c] += alpha * p.values[c];
                r[c] -= alpha * Ap.values[c];
            }
            ++iters;
            if (max_norm(r) <= 0.5 * tol) break;
            const double rr_new = dot(r, r);
            const double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t c = 0; c < n; ++c) p.values[c] = r[c] + beta * p.values[c];
        }
    }
    if (stats) *stats = MSolveStats{iters, true_residual};
    return a;
}

MeshFunction3D solve_m_3d(const MeshFunction3D& b, double tol, int max_iters, MSolveStats* stats) {
    return solve_m_3d(b, ScalarBoundary::uniform(b.mesh.N, FaceRule::mirror()), tol, max_iters, stats);
}

double operator_norm_c(const AveragingOperator3D& op) {
    const int N = op.mesh.N;
    const ScalarBoundary& bc = op.boundary;
    double norm = 0.0;
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i) {
                const int idx[3] = {i, j, k};
                double self = kSelfWeight;
                // Coefficient on the (-) and (+) neighbour along each axis.
                double nbr[3][2] = {{0, 0}, {0, 0}, {0, 0}};
                for (int ax = 0; ax < 3; ++ax) {
                    for (int side = 0; side < 2; ++side) {
                        const bool missing = side == 0 ? idx[ax] == 0 : idx[ax] == N - 1;
                        if (!missing) {
                            nbr[ax][side] += kNeighbourWeight;
                            continue;
                        }
                        const int a = ax == 0 ? j : i;
                        const int b = ax == 2 ? j : k;
                        const FaceRule& r = bc.rule(static_cast<Face>(2 * ax + side), a, b);
                        switch (r.rule) {
                            case GhostRule::Dirichlet: self -= kNeighbourWeight; break;
                            case GhostRule::ZeroNormalDerivative: self += kNeighbourWeight; break;
                            case GhostRule::OneSided:
                                self += 2.0 * kNeighbourWeight;
                                nbr[ax][1 - side] -= kNeighbourWeight;
                                break;
                            case GhostRule::Unset:
                                throw Error(ErrorKind::Configuration, "operator_norm_c: missing boundary rule");
                        }
                    }
                }
                double row = std::abs(self);
                for (const auto& pr : nbr) row += std::abs(pr[0]) + std::abs(pr[1]);
                norm = std::max(norm, row);
            }
        }
    }
    return norm;
}

}  // namespace monoscheme
