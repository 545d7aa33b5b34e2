#include "monoscheme/bvp1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "monoscheme/errors.hpp"
#include "monoscheme/stencil1d.hpp"

namespace monoscheme {

void validate(const SchemeCoefficients& c) {
    if (!(std::isfinite(c.k0) && std::isfinite(c.k1) && std::isfinite(c.k2) && std::isfinite(c.k3))) {
        throw Error(ErrorKind::Configuration, "scheme coefficients must be finite");
    }
    if (c.k3 == 0.0) throw Error(ErrorKind::Configuration, "k3 must be nonzero");
}

const char* to_string(Scheme s) noexcept { return s == Scheme::Base ? "base" : "monotonized"; }

SchemeSystem assemble_scheme(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc,
                             Scheme scheme) {
    validate(c);
    const double h = mesh.h;
    const double h2k1 = h * h * c.k1;
    double lo = -0.5 * h * c.k2 + c.k3;
    double di = -2.0 * c.k3;
    double up = 0.5 * h * c.k2 + c.k3;
    if (scheme == Scheme::Base) {
        di += h2k1;
    } else {
        lo += 0.25 * h2k1;
        di += 0.5 * h2k1;
        up += 0.25 * h2k1;
    }
    SchemeSystem sys{TridiagonalMatrix::toeplitz(mesh.n, lo, di, up),
                     std::vector<double>(static_cast<std::size_t>(mesh.n), -h * h * c.k0)};
    sys.rhs.front() -= lo * bc.left;
    sys.rhs.back() -= up * bc.right;
    return sys;
}

namespace {

[[noreturn]] void throw_singular(const char* which, double h) {
    std::ostringstream os;
    os << which << " scheme matrix is singular at h = " << h;
    throw SingularSchemeError(os.str(), h);
}

double residual_of(const SchemeSystem& sys, std::span<const double> x) {
    const std::vector<double> Ax = sys.matrix.multiply(x);
    return max_norm_diff(Ax, sys.rhs);
}

std::vector<double> solve_system(const SchemeSystem& sys, const char* which, double h) {
    const TridiagonalLU lu(sys.matrix);
    if (lu.singular()) throw_singular(which, h);
    std::vector<double> x = lu.solve(sys.rhs);
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) throw_singular(which, h);
    return x;
}

}  // namespace

Bvp1dSolution solve_base(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc) {
    const SchemeSystem sys = assemble_scheme(c, mesh, bc, Scheme::Base);
    std::vector<double> u = solve_system(sys, "base", mesh.h);
    Bvp1dSolution s;
    s.scheme = Scheme::Base;
    s.bc = bc;
    s.residual_c_norm = residual_of(sys, u);
    s.residual_scale = sys.matrix.norm_c() * max_norm(u) + std::abs(mesh.h * mesh.h * c.k0);
    s.solution = MeshFunction1D(mesh, std::move(u));
    return s;
}

Bvp1dSolution solve_monotonized(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc) {
    const SchemeSystem sys = assemble_scheme(c, mesh, bc, Scheme::Monotonized);
    MeshFunction1D v(mesh, solve_system(sys, "monotonized", mesh.h));
    Bvp1dSolution s;
    s.scheme = Scheme::Monotonized;
    s.bc = bc;
    s.residual_c_norm = residual_of(sys, v.values);
    s.residual_scale = sys.matrix.norm_c() * max_norm(v.values) + std::abs(mesh.h * mesh.h * c.k0);
    s.solution = apply_m_1d(v, bc);
    s.auxiliary = std::move(v);
    return s;
}

Bvp1dSolution solve_y_form(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc) {
    validate(c);
    const int n = mesh.n;
    const double h = mesh.h;

    // G(y) = h^2 k0 + h^2 k1 y + h k2 D1~(M^-1 y) + k3 D2~(M^-1 y), affine in y.
    auto G = [&](const MeshFunction1D& y) {
        const MeshFunction1D v = solve_m_1d(y, bc);
        const MeshFunction1D d1 = apply_d1_1d(v, bc);
        const MeshFunction1D d2 = apply_d2_1d(v, bc);
        Eigen::VectorXd g(n);
        for (int p = 0; p < n; ++p) {
            g[p] = h * h * c.k0 + h * h * c.k1 * y[p] + h * c.k2 * (h * d1[p]) + c.k3 * (h * h * d2[p]);
        }
        return g;
    };

    const Eigen::VectorXd g0 = G(MeshFunction1D(mesh));
    Eigen::MatrixXd A(n, n);
    for (int col = 0; col < n; ++col) {
        MeshFunction1D e(mesh);
        e[col] = 1.0;
        A.col(col) = G(e) - g0;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw_singular("form-12", h);
    const Eigen::VectorXd y = lu.solve(-g0);

    Bvp1dSolution s;
    s.scheme = Scheme::Monotonized;
    s.bc = bc;
    s.solution = MeshFunction1D(mesh, std::vector<double>(y.data(), y.data() + n));
    s.residual_c_norm = (A * y + g0).cwiseAbs().maxCoeff();
    s.residual_scale = A.cwiseAbs().rowwise().sum().maxCoeff() * y.cwiseAbs().maxCoeff() + std::abs(h * h * c.k0);
    s.auxiliary = solve_m_1d(s.solution, bc);
    return s;
}

namespace {

PivotIndicator indicator(const TridiagonalMatrix& m) {
    const TridiagonalLU lu(m);
    const double scale = m.norm_c();
    return PivotIndicator{scale > 0.0 ? lu.min_abs_pivot() / scale : 0.0, lu.log_abs_determinant(),
                          lu.determinant_sign()};
}

}  // namespace

std::vector<DeterminantScanEntry> determinant_scan(const SchemeCoefficients& c, std::span<const double> h_values,
                                                   const BoundaryData1D& bc, double a, double b,
                                                   double threshold) {
    validate(c);
    std::vector<DeterminantScanEntry> out;
    for (double hr : h_values) {
        if (!(hr > 0.0)) throw Error(ErrorKind::Configuration, "determinant_scan: h must be positive");
        const long cells = std::lround((b - a) / hr);
        if (cells < 2) continue;
        const Mesh1D mesh = make_mesh_1d(a, b, static_cast<int>(cells - 1));
        DeterminantScanEntry e;
        e.h_requested = hr;
        e.h = mesh.h;
        e.n = mesh.n;
        e.base = indicator(assemble_scheme(c, mesh, bc, Scheme::Base).matrix);
        e.monotonized = indicator(assemble_scheme(c, mesh, bc, Scheme::Monotonized).matrix);
        e.flagged = e.monotonized.min_pivot < threshold && e.base.min_pivot >= threshold;
        out.push_back(e);
    }
    return out;
}

AnalyticSolution1D::AnalyticSolution1D(const SchemeCoefficients& c, const BoundaryData1D& bc, double a, double b)
    : c_(c) {
    validate(c);
    const double disc = c.k2 * c.k2 - 4.0 * c.k1 * c.k3;
    if (disc > 0.0) {
        kind_ = Kind::Distinct;
        // Cancellation-free roots of k3 l^2 + k2 l + k1.
        const double q = -0.5 * (c.k2 + std::copysign(std::sqrt(disc), c.k2));
        re_[0] = q / c.k3;
        re_[1] = q != 0.0 ? c.k1 / q : -re_[0];
    } else if (disc == 0.0) {
        kind_ = Kind::Repeated;
        re_[0] = re_[1] = -c.k2 / (2.0 * c.k3);
    } else {
        kind_ = Kind::Complex;
        re_[0] = re_[1] = -c.k2 / (2.0 * c.k3);
        im_[0] = std::sqrt(-disc) / (2.0 * std::abs(c.k3));
        im_[1] = -im_[0];
    }
    // Anchor each growing exponential at the end where it is largest.
    for (int r = 0; r < 2; ++r) anchor_[r] = re_[r] > 0.0 ? b : a;
    if (kind_ != Kind::Distinct) anchor_[1] = anchor_[0];

    const Eval pa = particular(a), pb = particular(b);
    const Eval b0a = basis(0, a), b1a = basis(1, a), b0b = basis(0, b), b1b = basis(1, b);
    Eigen::Matrix2d m;
    m << b0a.v, b1a.v, b0b.v, b1b.v;
    const Eigen::Vector2d rhs(bc.left - pa.v, bc.right - pb.v);
    const Eigen::FullPivLU<Eigen::Matrix2d> lu(m);
    if (!lu.isInvertible() || std::abs(m.determinant()) < 1e-14 * m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff()) {
        throw Error(ErrorKind::DegenerateInput, "boundary-value problem has no unique solution");
    }
    const Eigen::Vector2d coef = lu.solve(rhs);
    coef_[0] = coef[0];
    coef_[1] = coef[1];
}

AnalyticSolution1D::Eval AnalyticSolution1D::particular(double x) const {
    if (c_.k1 != 0.0) return {-c_.k0 / c_.k1, 0.0, 0.0};
    if (c_.k2 != 0.0) {
        const double s = -c_.k0 / c_.k2;
        return {s * x, s, 0.0};
    }
    const double s = -c_.k0 / (2.0 * c_.k3);
    return {s * x * x, 2.0 * s * x, 2.0 * s};
}

AnalyticSolution1D::Eval AnalyticSolution1D::basis(int r, double x) const {
    const double t = x - anchor_[r];
    const double lam = re_[r];
    const double e = std::exp(lam * t);
    switch (kind_) {
        case Kind::Distinct: return {e, lam * e, lam * lam * e};
        case Kind::Repeated:
            if (r == 0) return {e, lam * e, lam * lam * e};
            return {t * e, (1.0 + lam * t) * e, (2.0 * lam + lam * lam * t) * e};
        case Kind::Complex: {
            const double w = im_[0];
            const double cs = std::cos(w * x), sn = std::sin(w * x);
            if (r == 0) {
                return {e * cs, e * (lam * cs - w * sn), e * ((lam * lam - w * w) * cs - 2.0 * lam * w * sn)};
            }
            return {e * sn, e * (lam * sn + w * cs), e * ((lam * lam - w * w) * sn + 2.0 * lam * w * cs)};
        }
    }
    return {0.0, 0.0, 0.0};
}

double AnalyticSolution1D::value(double x) const {
    return particular(x).v + coef_[0] * basis(0, x).v + coef_[1] * basis(1, x).v;
}

double AnalyticSolution1D::d1(double x) const {
    return particular(x).d1 + coef_[0] * basis(0, x).d1 + coef_[1] * basis(1, x).d1;
}

double AnalyticSolution1D::d2(double x) const {
    return particular(x).d2 + coef_[0] * basis(0, x).d2 + coef_[1] * basis(1, x).d2;
}

std::function<double(double)> analytic_solution(const SchemeCoefficients& c, const BoundaryData1D& bc, double a,
                                                double b) {
    return [sol = AnalyticSolution1D(c, bc, a, b)](double x) { return sol.value(x); };
}

ConvergenceReport convergence_order(const SchemeCoefficients& c, const BoundaryData1D& bc, Scheme scheme,
                                    std::span<const int> n_sequence, double a, double b) {
    bool increasing = n_sequence.size() >= 3;
    for (std::size_t q = 1; q < n_sequence.size(); ++q) increasing = increasing && n_sequence[q] > n_sequence[q - 1];
    if (!increasing) {
        throw Error(ErrorKind::Configuration, "convergence_order: need >= 3 strictly increasing mesh sizes");
    }
    const AnalyticSolution1D exact(c, bc, a, b);
    ConvergenceReport r;
    double scale = 0.0;
    for (int n : n_sequence) {
        const Mesh1D mesh = make_mesh_1d(a, b, n);
        const Bvp1dSolution s = scheme == Scheme::Base ? solve_base(c, mesh, bc) : solve_monotonized(c, mesh, bc);
        double err = 0.0;
        for (int p = 0; p < n; ++p) {
            const double ex = exact(mesh.x(p + 1));
            scale = std::max(scale, std::abs(ex));
            err = std::max(err, std::abs(s.solution[p] - ex));
        }
        r.n.push_back(n);
        r.h.push_back(mesh.h);
        r.error.push_back(err);
    }
    for (std::size_t q = 1; q < r.error.size(); ++q) r.converging = r.converging && r.error[q] < r.error[q - 1];

    const double roundoff = 1e-11 * std::max(scale, 1.0);
    r.degenerate = std::all_of(r.error.begin(), r.error.end(), [&](double e) { return e <= roundoff; });
    if (r.degenerate) return r;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(r.error.size());
    for (std::size_t q = 0; q < r.error.size(); ++q) {
        const double lx = std::log(r.h[q]);
        const double ly = std::log(std::max(r.error[q], std::numeric_limits<double>::min()));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    r.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return r;
}

std::vector<double> node_values(const Bvp1dSolution& s) { return s.solution.with_boundary(s.bc); }

double interpolate_linear(std::span<const double> x, std::span<const double> y, double at) {
    if (x.size() != y.size() || x.empty()) throw Error(ErrorKind::Index, "interpolate_linear: bad tables");
    if (at <= x.front()) return y.front();
    if (at >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    const std::size_t hi = static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi - 1;
    const double t = (at - x[lo]) / (x[hi] - x[lo]);
    return (1.0 - t) * y[lo] + t * y[hi];
}

std::vector<double> dense_reference(const SchemeCoefficients& c, const Mesh1D& mesh, const BoundaryData1D& bc,
                                    int points) {
    const Mesh1D fine = make_mesh_1d(mesh.a, mesh.b, points - 2);
    const std::vector<double> fy = node_values(solve_base(c, fine, bc));
    std::vector<double> fx(fy.size());
    for (int i = 0; i <= fine.n + 1; ++i) fx[i] = fine.x(i);
    std::vector<double> out(static_cast<std::size_t>(mesh.n) + 2);
    for (int i = 0; i <= mesh.n + 1; ++i) out[i] = interpolate_linear(fx, fy, mesh.x(i));
    return out;
}

}  // namespace monoscheme
