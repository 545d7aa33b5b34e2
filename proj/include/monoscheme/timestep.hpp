// Weighted time stepping for u_t = F(u, D1 u, D2 u) on a Mesh1D with fixed
// Dirichlet data:
//
//   (u^{n+1} - u^n) / tau = sigma F^{n+1} + (1 - sigma) F^n
//
// and the two equivalent monotonized forms, one advancing y = Mv through an
// M-solve per step, the other advancing v through M^-1 applied to F.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "monoscheme/bvp1d.hpp"
#include "monoscheme/grid.hpp"

namespace monoscheme {

struct TimeStepConfig {
    double tau = 1e-3;
    double sigma = 0.0;  ///< 0 explicit, 1 fully implicit
    double tol = 1e-12;  ///< inner fixed-point tolerance (nonlinear F only)
    int max_iters = 500;
    double relaxation = 1.0;  ///< fixed-point damping in (0, 1]
};

/// Throws Error(Configuration) unless tau > 0, 0 <= sigma <= 1, tol > 0,
/// max_iters >= 1 and 0 < relaxation <= 1.
void validate(const TimeStepConfig& cfg);

/// F(w, d1, d2) evaluated node by node: the function argument w, the first
/// and second differences d1, d2.
///
/// The linear family k0 + k1 w + k2 d1 + k3 d2 is kept in closed form so that
/// implicit steps can be solved directly. A general pointwise law may be
/// supplied instead; it is then solved by relaxed fixed-point iteration.
struct TimeRhs {
    SchemeCoefficients linear{0.0, 0.0, 0.0, 0.0};
    std::function<double(double x, double w, double d1, double d2)> pointwise;

    bool is_linear() const noexcept { return !pointwise; }
    double operator()(double x, double w, double d1, double d2) const;
};

/// The stationary problem turned into an evolution equation with positive
/// diffusion: F = sign(k3) (k0 + k1 w + k2 d1 + k3 d2). Its steady state is the
/// stationary scheme. Throws Error(Configuration) if k3 == 0.
TimeRhs evolution_rhs(const SchemeCoefficients& c);

TimeRhs zero_rhs();

/// F(w, D1 v, D2 v) at the interior nodes, with boundary values from bc.
std::vector<double> evaluate_rhs(const TimeRhs& F, const MeshFunction1D& w, const MeshFunction1D& v,
                                 const BoundaryData1D& bc);

/// One step of the base scheme. Throws Error(StepFailure) if the implicit
/// solve does not reach tol.
MeshFunction1D step_base(const MeshFunction1D& u, const TimeRhs& F, const BoundaryData1D& bc,
                         const TimeStepConfig& cfg);

struct MonotonizedState {
    MeshFunction1D v;  ///< auxiliary
    MeshFunction1D y;  ///< Mv
};

/// Advances y: (y^{n+1} - Mv^n)/tau = sigma F(Mv^{n+1}, D1 v^{n+1}, D2 v^{n+1})
/// + (1 - sigma) F(Mv^n, D1 v^n, D2 v^n), then v^{n+1} = M^-1 y^{n+1}.
MonotonizedState step_monotonized(const MeshFunction1D& v, const TimeRhs& F, const BoundaryData1D& bc,
                                  const TimeStepConfig& cfg);

/// Advances v: v^{n+1} = v^n + tau M^-1 [sigma F^{n+1} + (1 - sigma) F^n],
/// then y^{n+1} = Mv^{n+1}. Since the boundary data are fixed in time, M^-1 here
/// is the inverse of the homogeneous part of M.
MonotonizedState step_monotonized_alt(const MeshFunction1D& v, const TimeRhs& F, const BoundaryData1D& bc,
                                      const TimeStepConfig& cfg);

enum class StepForm { Base, Monotonized, MonotonizedAlt };

const char* to_string(StepForm f) noexcept;

struct TrajectoryPoint {
    double t = 0.0;
    double update = 0.0;  ///< ||w^{n+1} - w^n||_C of the answer (u or y)
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> values;  ///< answer at the interior nodes
};

struct Trajectory {
    StepForm form = StepForm::Base;
    std::vector<TrajectoryPoint> points;
    std::vector<Snapshot> snapshots;
    MeshFunction1D state;                 ///< u, or v for the monotonized forms
    std::optional<MeshFunction1D> answer;  ///< y for the monotonized forms
    int steps = 0;
    bool converged = false;
};

struct RunOptions {
    int max_steps = 100000;
    double steady_tol = 0.0;  ///< stop once the update is <= steady_tol; 0 never stops early
    int snapshot_every = 0;   ///< 0 disables snapshots
};

/// Marches from `initial` (u for the base form, v otherwise).
Trajectory march(const MeshFunction1D& initial, const TimeRhs& F, const BoundaryData1D& bc,
                 const TimeStepConfig& cfg, StepForm form, const RunOptions& opt);

}  // namespace monoscheme
