// Steady incompressible flow through a cubic cell with two square holes on
// the x-faces, solved by pseudo-time (artificial compressibility) iteration
//
//   v <- v + sigma_v * ( -(w.grad) v - grad(p)/rho + nu lap(v) )
//   p <- p + sigma_p * div(v)
//
// with w = v for the base scheme and w = Mv for the monotonized one. The
// monotonized answer is y = Mv, formed once the iteration has converged.
//
// Boundary closure (cell-centred ghosts):
//   velocity, walls        Dirichlet 0
//   velocity, holes        zero normal derivative
//   pressure, holes        Dirichlet p0 (x = 0) and p1 (x = L)
//   pressure, walls        one-sided difference
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "monoscheme/grid.hpp"
#include "monoscheme/stencil3d.hpp"

namespace monoscheme {

struct FlowConfig {
    double L = 1.0 / 30.0;  ///< cube side
    int N = 20;             ///< cells per direction
    double rho = 1.0;
    double nu = 1.002;
    double p0 = 1000.0;  ///< pressure on the hole at x = 0
    double p1 = 0.0;     ///< pressure on the hole at x = L
    int hole_first = 5;  ///< first hole cell in j and k (0-based, inclusive)
    int hole_last = 14;  ///< last hole cell in j and k (0-based, inclusive)
    /// Pseudo-time step for the velocity; default_sigma_v() when unset.
    std::optional<double> sigma_v;
    /// Pressure relaxation; default_sigma_p() when unset. Negative values
    /// drive div v to zero.
    std::optional<double> sigma_p;
    double tol = 1e-9;  ///< on ||sigma_v R||_C and ||div v||_C
    int max_iters = 200000;
};

/// Throws Error(Configuration) naming the offending field.
void validate(const FlowConfig& cfg);

/// 0.9 * h^2 / (6 nu): inside the explicit diffusion limit h^2 / (6 nu).
double default_sigma_v(const FlowConfig& cfg);
/// -rho h^2 / (4 sigma_v): pressure-wave number sigma_v |sigma_p| / (rho h^2) = 1/4.
double default_sigma_p(const FlowConfig& cfg);
double resolved_sigma_v(const FlowConfig& cfg);
double resolved_sigma_p(const FlowConfig& cfg);

Mesh3D flow_mesh(const FlowConfig& cfg);
BoundaryPolicy3D make_flow_policy(const FlowConfig& cfg);

struct FlowField {
    MeshFunction3D vx, vy, vz, p;

    explicit FlowField(const Mesh3D& mesh) : vx(mesh), vy(mesh), vz(mesh), p(mesh) {}

    const Mesh3D& mesh() const noexcept { return vx.mesh; }
    const MeshFunction3D& velocity(Axis a) const noexcept {
        return a == Axis::X ? vx : (a == Axis::Y ? vy : vz);
    }
};

/// Max-norm over all four variables stacked into one vector.
double max_norm(const FlowField& f) noexcept;

enum class FlowVariant { Base, Monotonized };
enum class Advecting { Raw, Monotonized };

const char* to_string(FlowVariant v) noexcept;

/// Zero velocity; pressure linear in x from p0 at x = 0 to p1 at x = L.
FlowField init_field(const FlowConfig& cfg);

struct MomentumResidual {
    MeshFunction3D x, y, z;
};

/// R = -(w.grad) v - grad(p)/rho + nu lap(v), w = v or Mv.
MomentumResidual momentum_residual(const FlowField& field, const FlowConfig& cfg, Advecting advecting);

struct IterationNorms {
    double update = 0.0;      ///< ||sigma_v R||_C
    double divergence = 0.0;  ///< ||div v^{n+1}||_C
};

/// One Jacobi sweep. Throws Error(Divergence) on non-finite values.
FlowField iterate(const FlowField& field, const FlowConfig& cfg, FlowVariant variant,
                  IterationNorms* norms = nullptr);

struct SolutionReport {
    FlowField field;
    FlowVariant variant = FlowVariant::Base;
    std::optional<FlowField> y;  ///< monotonized only: velocities Mv, pressure copied from field
    int iterations = 0;
    bool converged = false;
    IterationNorms final_norms;
    double momentum_residual = 0.0;    ///< ||R||_C at the returned field
    double divergence_residual = 0.0;  ///< ||div v||_C at the returned field
};

/// Iterates from init_field until both norms are <= tol or max_iters is
/// reached (then converged = false). A divergence error names the iteration.
SolutionReport solve_steady(const FlowConfig& cfg, FlowVariant variant);

/// Continues from a given field.
SolutionReport solve_steady(const FlowConfig& cfg, FlowVariant variant, FlowField start);

/// Row of cells along x through the hole centre. For an even-width hole the
/// centre falls on a cell face and the lower cell index is used.
int centerline_index(const FlowConfig& cfg) noexcept;
std::vector<std::pair<double, double>> centerline_profile(const FlowField& field, const FlowConfig& cfg,
                                                          Axis component);

/// M applied to every velocity component under the velocity closure.
FlowField monotonize_velocity(const FlowField& field, const BoundaryPolicy3D& policy);

}  // namespace monoscheme
