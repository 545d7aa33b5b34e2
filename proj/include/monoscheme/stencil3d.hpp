// Cell-centred stencils on a Mesh3D with ghost-cell boundary closure.
//
// Every boundary cell face carries a GhostRule that supplies the value of the
// missing neighbour across that face:
//
//   Dirichlet(g)          ghost = 2g - u_c          (face value g)
//   ZeroNormalDerivative  ghost = u_c               (mirror)
//   OneSided              ghost = 2u_c - u_inner    (central difference with
//                                                    this ghost is the inner
//                                                    one-sided difference)
//
// With the ghosts in place all operators are plain central stencils, so the
// same closure is shared by derivatives and by the averaging operator M.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "monoscheme/grid.hpp"

namespace monoscheme {

enum class Face : int { XMin = 0, XMax = 1, YMin = 2, YMax = 3, ZMin = 4, ZMax = 5 };
enum class Axis : int { X = 0, Y = 1, Z = 2 };

enum class GhostRule : std::uint8_t { Unset, Dirichlet, ZeroNormalDerivative, OneSided };

struct FaceRule {
    GhostRule rule = GhostRule::Unset;
    double value = 0.0;  ///< Dirichlet face value

    static FaceRule dirichlet(double g) { return {GhostRule::Dirichlet, g}; }
    static FaceRule mirror() { return {GhostRule::ZeroNormalDerivative, 0.0}; }
    static FaceRule one_sided() { return {GhostRule::OneSided, 0.0}; }
};

/// Boundary closure for one scalar variable: a FaceRule for every boundary
/// cell face. Face cells are addressed by the two tangential indices in
/// increasing axis order, i.e. (j,k) on x-faces, (i,k) on y-faces, (i,j) on
/// z-faces.
class ScalarBoundary {
public:
    explicit ScalarBoundary(int N = 2);

    static ScalarBoundary uniform(int N, FaceRule rule);

    int N() const noexcept { return N_; }

    void set_face(Face face, FaceRule rule);
    /// Inclusive tangential ranges [a0, a1] x [b0, b1].
    void set_patch(Face face, int a0, int a1, int b0, int b1, FaceRule rule);

    const FaceRule& rule(Face face, int a, int b) const {
        return faces_[static_cast<int>(face)][static_cast<std::size_t>(a) + static_cast<std::size_t>(N_) * b];
    }

    /// Throws Error(Configuration) if any face cell has no rule.
    void validate(const char* who) const;

    /// Same rules with every Dirichlet value set to zero (the linear part).
    ScalarBoundary homogeneous() const;

    bool has_rule(GhostRule r) const noexcept;

private:
    int N_;
    std::array<std::vector<FaceRule>, 6> faces_;
};

/// Closure for the four flow variables.
struct BoundaryPolicy3D {
    ScalarBoundary vx, vy, vz, p;

    const ScalarBoundary& velocity(Axis a) const noexcept {
        return a == Axis::X ? vx : (a == Axis::Y ? vy : vz);
    }
};

/// A mesh function copied into an (N+2)^3 array whose outer layer holds the
/// ghost values. Edge and corner ghosts are never read and stay zero.
class PaddedField {
public:
    PaddedField(const MeshFunction3D& u, const ScalarBoundary& bc);

    int N() const noexcept { return N_; }
    std::size_t stride(Axis a) const noexcept;

    /// Padded offset of interior cell (i,j,k).
    std::size_t at(int i, int j, int k) const noexcept {
        const auto P = static_cast<std::size_t>(N_ + 2);
        return static_cast<std::size_t>(i + 1) + P * (static_cast<std::size_t>(j + 1) + P * static_cast<std::size_t>(k + 1));
    }
    double operator[](std::size_t offset) const noexcept { return data_[offset]; }

private:
    int N_;
    std::vector<double> data_;
};

double ghost_value(const FaceRule& rule, double inside, double inner);

// Central differences with ghost closure.
MeshFunction3D grad_3d(const MeshFunction3D& u, Axis axis, const ScalarBoundary& bc);
MeshFunction3D second_derivative_3d(const MeshFunction3D& u, Axis axis, const ScalarBoundary& bc);
MeshFunction3D laplacian_3d(const MeshFunction3D& u, const ScalarBoundary& bc);
MeshFunction3D div_3d(const MeshFunction3D& vx, const MeshFunction3D& vy, const MeshFunction3D& vz,
                      const BoundaryPolicy3D& policy);

/// Seven-point average (Mu)_c = u_c/2 + (1/12) * sum of the six axis
/// neighbours, i.e. the mean over the six half-sums (u_c + u_nbr)/2.
struct AveragingOperator3D {
    Mesh3D mesh;
    ScalarBoundary boundary;

    MeshFunction3D apply(const MeshFunction3D& u) const;
};

/// M with the mirror closure on every face (maps constants to themselves).
MeshFunction3D apply_m_3d(const MeshFunction3D& u);
MeshFunction3D apply_m_3d(const MeshFunction3D& u, const ScalarBoundary& bc);

struct MSolveStats {
    int iterations = 0;
    double residual = 0.0;  ///< ||apply_m_3d(a) - b||_C
};

/// Finds a with ||apply_m_3d(a, bc) - b||_C <= tol by conjugate gradients on
/// the symmetric seven-point system. Throws IterationError after max_iters.
/// OneSided rules make the system non-symmetric and are rejected with
/// Error(Configuration). Under an all-Dirichlet closure the checkerboard
/// (-1)^(i+j+k) lies in the kernel of M, so a is only determined up to it.
MeshFunction3D solve_m_3d(const MeshFunction3D& b, const ScalarBoundary& bc, double tol, int max_iters,
                          MSolveStats* stats = nullptr);
MeshFunction3D solve_m_3d(const MeshFunction3D& b, double tol, int max_iters, MSolveStats* stats = nullptr);

/// Max absolute row sum of the linear part of M under its closure.
double operator_norm_c(const AveragingOperator3D& op);

}  // namespace monoscheme
