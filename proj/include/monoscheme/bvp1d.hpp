// The constant-coefficient boundary-value problem
//
//   k0 + k1 U + k2 U' + k3 U'' = 0,   U(a) = u_0,  U(b) = u_{n+1}
//
// and its three-point difference schemes. With the unscaled stencils
// D1~ = h*D1 and D2~ = h^2*D2 the base scheme is
//
//   h^2 k0 + h^2 k1 u_i + h k2 (D1~ u)_i + k3 (D2~ u)_i = 0,
//
// and the monotonized scheme replaces u_i by (Mv)_i in the k1 term only,
// solves for the auxiliary v, and returns y = Mv.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "monoscheme/grid.hpp"
#include "monoscheme/tridiagonal.hpp"

namespace monoscheme {

struct SchemeCoefficients {
    double k0 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 1.0;
};

/// Throws Error(Configuration) if k3 == 0 or any coefficient is not finite.
void validate(const SchemeCoefficients& c);

enum class Scheme { Base, Monotonized };

const char* to_string(Scheme s) noexcept;

struct Bvp1dSolution {
    Scheme scheme = Scheme::Base;
    BoundaryData1D bc;
    MeshFunction1D solution;                  ///< u (base) or y = Mv (monotonized)
    std::optional<MeshFunction1D> auxiliary;  ///< v, monotonized only
    double residual_c_norm = 0.0;             ///< ||A x - rhs||_C of the solved system
    double residual_scale = 0.0;              ///< ||A||_C ||x||_C + |h^2 k0|

    const Mesh1D& mesh() const noexcept { return solution.mesh; }
};

struct SchemeSystem {
    TridiagonalMatrix matrix;
    std::vector<double> rhs;
};

/// The tridiagonal system of the base scheme (in u) or the monotonized
/// scheme (in v); boundary data moved to the right-hand side.
SchemeSystem assemble_scheme(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc,
                             Scheme scheme);

/// Throws SingularSchemeError carrying h if the matrix is singular.
Bvp1dSolution solve_base(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc);
Bvp1dSolution solve_monotonized(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc);

/// Solves F(y, D1 M^-1 y, D2 M^-1 y) = 0 directly for y. The affine map is
/// assembled column by column through solve_m_1d and factorised densely, so
/// it shares no code path with the tridiagonal v-system of solve_monotonized.
Bvp1dSolution solve_y_form(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc);

struct PivotIndicator {
    double min_pivot = 0.0;  ///< min |u_rr| / ||A||_C
    double log_abs_det = 0.0;
    int det_sign = 0;
};

struct DeterminantScanEntry {
    double h_requested = 0.0;
    double h = 0.0;  ///< actual step, (b - a) / (n + 1)
    int n = 0;
    PivotIndicator base;
    PivotIndicator monotonized;
    bool flagged = false;  ///< monotonized near-singular while base is not
};

/// One entry per h (in order). Steps that do not fit at least one interior
/// node in [a, b] are skipped.
std::vector<DeterminantScanEntry> determinant_scan(const SchemeCoefficients& c, std::span<const double> h_values,
                                                   const BoundaryData1D& bc, double a = 0.0, double b = 1.0,
                                                   double threshold = 1e-8);

/// Closed-form solution of the continuous problem, with first and second
/// derivatives for residual checks.
class AnalyticSolution1D {
public:
    /// Throws Error(DegenerateInput) if the boundary-value problem has no
    /// unique solution, Error(Configuration) if k3 == 0.
    AnalyticSolution1D(const SchemeCoefficients& c, const BoundaryData1D& bc, double a, double b);

    double operator()(double x) const { return value(x); }
    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;

    /// Characteristic roots of k3 l^2 + k2 l + k1 = 0 (real parts, imaginary
    /// parts). Conjugate roots share the real part.
    double root_re(int r) const noexcept { return re_[r]; }
    double root_im(int r) const noexcept { return im_[r]; }

private:
    enum class Kind { Distinct, Repeated, Complex };
    struct Eval {
        double v, d1, d2;
    };
    Eval basis(int r, double x) const;
    Eval particular(double x) const;

    SchemeCoefficients c_;
    Kind kind_ = Kind::Distinct;
    double re_[2] = {0, 0}, im_[2] = {0, 0};
    double anchor_[2] = {0, 0};
    double coef_[2] = {0, 0};
};

std::function<double(double)> analytic_solution(const SchemeCoefficients& c, const BoundaryData1D& bc, double a,
                                                double b);

struct ConvergenceReport {
    std::vector<int> n;
    std::vector<double> h;
    std::vector<double> error;  ///< C-norm error against the analytic solution
    double order = 0.0;         ///< least-squares slope of log(error) vs log(h)
    bool degenerate = false;    ///< every error at round-off level, order meaningless
    bool converging = true;     ///< errors strictly decreasing
};

/// Mesh-refinement study on [a, b]. Throws Error(Configuration) unless
/// n_sequence is strictly increasing with at least three entries.
ConvergenceReport convergence_order(const SchemeCoefficients& c, const BoundaryData1D& bc, Scheme scheme,
                                    std::span<const int> n_sequence, double a = 0.0, double b = 1.0);

/// Node values of the solution with boundary data prepended and appended.
std::vector<double> node_values(const Bvp1dSolution& s);

/// Piecewise-linear interpolation of node data (x ascending).
double interpolate_linear(std::span<const double> x, std::span<const double> y, double at);

/// Base scheme on a mesh of `points` total nodes over the same interval,
/// interpolated onto the nodes 0..n+1 of `mesh`.
std::vector<double> dense_reference(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc,
                                    int points = 100);

}  // namespace monoscheme
