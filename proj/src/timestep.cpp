#include "monoscheme/timestep.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "monoscheme/errors.hpp"
#include "monoscheme/stencil1d.hpp"

namespace monoscheme {

void validate(const TimeStepConfig& cfg) {
    auto fail = [](const char* what) { throw Error(ErrorKind::Configuration, std::string("time step: ") + what); };
    if (!(cfg.tau > 0.0 && std::isfinite(cfg.tau))) fail("tau must be positive");
    if (!(cfg.sigma >= 0.0 && cfg.sigma <= 1.0)) fail("sigma must lie in [0, 1]");
    if (!(cfg.tol > 0.0)) fail("tol must be positive");
    if (cfg.max_iters < 1) fail("max_iters must be >= 1");
    if (!(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0)) fail("relaxation must lie in (0, 1]");
}

double TimeRhs::operator()(double x, double w, double d1, double d2) const {
    if (pointwise) return pointwise(x, w, d1, d2);
    return linear.k0 + linear.k1 * w + linear.k2 * d1 + linear.k3 * d2;
}

TimeRhs evolution_rhs(const SchemeCoefficients& c) {
    validate(c);
    const double s = c.k3 > 0.0 ? 1.0 : -1.0;
    TimeRhs F;
    F.linear = SchemeCoefficients{s * c.k0, s * c.k1, s * c.k2, s * c.k3};
    return F;
}

TimeRhs zero_rhs() { return TimeRhs{}; }

std::vector<double> evaluate_rhs(const TimeRhs& F, const MeshFunction1D& w, const MeshFunction1D& v,
                                 const BoundaryData1D& bc) {
    const MeshFunction1D d1 = apply_d1_1d(v, bc);
    const MeshFunction1D d2 = apply_d2_1d(v, bc);
    std::vector<double> out(v.size());
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = F(v.mesh.x(static_cast<int>(p) + 1), w[p], d1[p], d2[p]);
    }
    return out;
}

const char* to_string(StepForm f) noexcept {
    switch (f) {
        case StepForm::Base: return "base";
        case StepForm::Monotonized: return "monotonized";
        case StepForm::MonotonizedAlt: return "monotonized-alt";
    }
    return "?";
}

namespace {

// Linear part of a linear F as a tridiagonal matrix acting on the unknown
// whose differences are taken; w is either that unknown or its M-average.
TridiagonalMatrix linear_part(const SchemeCoefficients& k, const Mesh1D& mesh, bool averaged) {
    const double h = mesh.h;
    double lo = -0.5 * k.k2 / h + k.k3 / (h * h);
    double di = -2.0 * k.k3 / (h * h);
    double up = 0.5 * k.k2 / h + k.k3 / (h * h);
    if (averaged) {
        lo += 0.25 * k.k1;
        di += 0.5 * k.k1;
        up += 0.25 * k.k1;
    } else {
        di += k.k1;
    }
    return TridiagonalMatrix::toeplitz(mesh.n, lo, di, up);
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& a, const std::vector<double>& rhs) {
    const TridiagonalLU lu(a);
    if (lu.singular()) throw StepError("implicit step matrix is singular", INFINITY);
    return lu.solve(rhs);
}

[[noreturn]] void throw_not_converged(double residual, int iters) {
    std::ostringstream os;
    os << "implicit step did not converge in " << iters << " iterations (residual " << residual << ")";
    throw StepError(os.str(), residual);
}

void check_finite(const std::vector<double>& x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw StepError("time step produced non-finite values", INFINITY);
    }
}

// Relaxed fixed-point iteration x <- (1-w) x + w g(x) from x0; stops on
// ||g(x) - x||_C <= tol.
template <class G>
std::vector<double> fixed_point(std::vector<double> x, const G& g, const TimeStepConfig& cfg) {
    double res = INFINITY;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const std::vector<double> gx = g(x);
        res = max_norm_diff(gx, x);
        if (!std::isfinite(res)) break;
        if (res <= cfg.tol) return gx;
        for (std::size_t p = 0; p < x.size(); ++p) x[p] += cfg.relaxation * (gx[p] - x[p]);
    }
    throw_not_converged(res, cfg.max_iters);
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
    std::vector<double> out(x);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += a * y[p];
    return out;
}

}  // namespace

MeshFunction1D step_base(const MeshFunction1D& u, const TimeRhs& F, const BoundaryData1D& bc,
                         const TimeStepConfig& cfg) {
    validate(cfg);
    const Mesh1D& mesh = u.mesh;
    const double tau = cfg.tau, s = cfg.sigma;
    const std::vector<double> Fn = evaluate_rhs(F, u, u, bc);
    // Known part: u^n + tau (1 - sigma) F^n.
    const std::vector<double> known = axpy(u.values, tau * (1.0 - s), Fn);

    std::vector<double> next;
    if (s == 0.0) {
        next = known;
    } else if (F.is_linear()) {
        const MeshFunction1D zero(mesh);
        const std::vector<double> g = evaluate_rhs(F, zero, zero, bc);
        TridiagonalMatrix a = linear_part(F.linear, mesh, false);
        for (int r = 0; r < mesh.n; ++r) {
            a.lower[r] *= -tau * s;
            a.upper[r] *= -tau * s;
            a.diag[r] = 1.0 - tau * s * a.diag[r];
        }
        next = solve_tridiagonal(a, axpy(known, tau * s, g));
    } else {
        next = fixed_point(
            u.values,
            [&](const std::vector<double>& x) {
                const MeshFunction1D w(mesh, x);
                return axpy(known, tau * s, evaluate_rhs(F, w, w, bc));
            },
            cfg);
    }
    check_finite(next);
    return MeshFunction1D(mesh, std::move(next));
}

MonotonizedState step_monotonized(const MeshFunction1D& v, const TimeRhs& F, const BoundaryData1D& bc,
                                  const TimeStepConfig& cfg) {
    validate(cfg);
    const Mesh1D& mesh = v.mesh;
    const int n = mesh.n;
    const double tau = cfg.tau, s = cfg.sigma;
    const MeshFunction1D mv = apply_m_1d(v, bc);
    const std::vector<double> known = axpy(mv.values, tau * (1.0 - s), evaluate_rhs(F, mv, v, bc));

    // F at the new level written in y alone: F(y, D1 M^-1 y, D2 M^-1 y).
    auto F_of_y = [&](const std::vector<double>& yv) {
        const MeshFunction1D y(mesh, yv);
        return evaluate_rhs(F, y, solve_m_1d(y, bc), bc);
    };

    std::vector<double> y;
    if (s == 0.0) {
        y = known;
    } else if (F.is_linear()) {
        // y - tau sigma F(y, ...) = known is affine in y; assemble it column by column.
        auto phi = [&](const std::vector<double>& yv) { return axpy(yv, -tau * s, F_of_y(yv)); };
        const std::vector<double> c0 = phi(std::vector<double>(n, 0.0));
        Eigen::MatrixXd A(n, n);
        for (int col = 0; col < n; ++col) {
            std::vector<double> e(n, 0.0);
            e[col] = 1.0;
            const std::vector<double> pc = phi(e);
            for (int r = 0; r < n; ++r) A(r, col) = pc[r] - c0[r];
        }
        Eigen::VectorXd rhs(n);
        for (int r = 0; r < n; ++r) rhs[r] = known[r] - c0[r];
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        const Eigen::VectorXd sol = lu.solve(rhs);
        y.assign(sol.data(), sol.data() + n);
    } else {
        y = fixed_point(
            mv.values, [&](const std::vector<double>& yv) { return axpy(known, tau * s, F_of_y(yv)); }, cfg);
    }
    check_finite(y);
    MeshFunction1D ym(mesh, std::move(y));
    MeshFunction1D vn = solve_m_1d(ym, bc);
    return MonotonizedState{std::move(vn), std::move(ym)};
}

MonotonizedState step_monotonized_alt(const MeshFunction1D& v, const TimeRhs& F, const BoundaryData1D& bc,
                                      const TimeStepConfig& cfg) {
    validate(cfg);
    const Mesh1D& mesh = v.mesh;
    const double tau = cfg.tau, s = cfg.sigma;
    const BoundaryData1D none{0.0, 0.0};
    const std::vector<double> Fn = evaluate_rhs(F, apply_m_1d(v, bc), v, bc);

    std::vector<double> next;
    if (s == 0.0) {
        next = axpy(v.values, tau, solve_m_1d(MeshFunction1D(mesh, Fn), none).values);
    } else if (F.is_linear()) {
        // (M0 - tau sigma B) v^{n+1} = M0 v^n + tau sigma g + tau (1 - sigma) F^n,
        // with F(Mv, D1 v, D2 v) = B v + g.
        const MeshFunction1D zero(mesh);
        const std::vector<double> g = evaluate_rhs(F, apply_m_1d(zero, bc), zero, bc);
        const TridiagonalMatrix b = linear_part(F.linear, mesh, true);
        TridiagonalMatrix a = TridiagonalMatrix::toeplitz(mesh.n, 0.25, 0.5, 0.25);
        for (int r = 0; r < mesh.n; ++r) {
            a.lower[r] -= tau * s * b.lower[r];
            a.diag[r] -= tau * s * b.diag[r];
            a.upper[r] -= tau * s * b.upper[r];
        }
        std::vector<double> rhs = apply_m_1d(v, none).values;
        for (std::size_t p = 0; p < rhs.size(); ++p) rhs[p] += tau * s * g[p] + tau * (1.0 - s) * Fn[p];
        next = solve_tridiagonal(a, rhs);
    } else {
        next = fixed_point(
            v.values,
            [&](const std::vector<double>& x) {
                const MeshFunction1D w(mesh, x);
                const std::vector<double> Fk = evaluate_rhs(F, apply_m_1d(w, bc), w, bc);
                std::vector<double> comb(Fk.size());
                for (std::size_t p = 0; p < comb.size(); ++p) comb[p] = s * Fk[p] + (1.0 - s) * Fn[p];
                return axpy(v.values, tau, solve_m_1d(MeshFunction1D(mesh, comb), none).values);
            },
            cfg);
    }
    check_finite(next);
    MeshFunction1D vn(mesh, std::move(next));
    MeshFunction1D y = apply_m_1d(vn, bc);
    return MonotonizedState{std::move(vn), std::move(y)};
}

Trajectory march(const MeshFunction1D& initial, const TimeRhs& F, const BoundaryData1D& bc,
                 const TimeStepConfig& cfg, StepForm form, const RunOptions& opt) {
    validate(cfg);
    if (opt.max_steps < 0 || opt.snapshot_every < 0 || opt.steady_tol < 0.0) {
        throw Error(ErrorKind::Configuration, "march: max_steps, snapshot_every and steady_tol must be >= 0");
    }
    Trajectory tr;
    tr.form = form;
    tr.state = initial;
    if (form != StepForm::Base) tr.answer = apply_m_1d(initial, bc);
    auto answer = [&]() -> const MeshFunction1D& { return tr.answer ? *tr.answer : tr.state; };

    if (opt.snapshot_every > 0) tr.snapshots.push_back({0.0, answer().values});
    for (int n = 1; n <= opt.max_steps; ++n) {
        const std::vector<double> before = answer().values;
        if (form == StepForm::Base) {
            tr.state = step_base(tr.state, F, bc, cfg);
        } else {
            MonotonizedState st = form == StepForm::Monotonized ? step_monotonized(tr.state, F, bc, cfg)
                                                                : step_monotonized_alt(tr.state, F, bc, cfg);
            tr.state = std::move(st.v);
            tr.answer = std::move(st.y);
        }
        tr.steps = n;
        const double t = n * cfg.tau;
        const double upd = max_norm_diff(answer().values, before);
        tr.points.push_back({t, upd});
        if (opt.snapshot_every > 0 && n % opt.snapshot_every == 0) tr.snapshots.push_back({t, answer().values});
        if (opt.steady_tol > 0.0 && upd <= opt.steady_tol) {
            tr.converged = true;
            break;
        }
    }
    return tr;
}

}  // namespace monoscheme
