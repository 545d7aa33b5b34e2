#include "monoscheme/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monoscheme/errors.hpp"

namespace monoscheme {

TridiagonalMatrix TridiagonalMatrix::toeplitz(int n, double lo, double di, double up) {
    TridiagonalMatrix m(n);
    std::fill(m.lower.begin(), m.lower.end(), lo);
    std::fill(m.diag.begin(), m.diag.end(), di);
    std::fill(m.upper.begin(), m.upper.end(), up);
    if (n > 0) {
        m.lower[0] = 0.0;
        m.upper[n - 1] = 0.0;
    }
    return m;
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
    const int n = size();
    if (static_cast<int>(x.size()) != n) throw Error(ErrorKind::Index, "tridiagonal multiply: size mismatch");
    std::vector<double> y(n);
    for (int r = 0; r < n; ++r) {
        double s = diag[r] * x[r];
        if (r > 0) s += lower[r] * x[r - 1];
        if (r + 1 < n) s += upper[r] * x[r + 1];
        y[r] = s;
    }
    return y;
}

double TridiagonalMatrix::norm_c() const noexcept {
    const int n = size();
    double m = 0.0;
    for (int r = 0; r < n; ++r) {
        double s = std::abs(diag[r]);
        if (r > 0) s += std::abs(lower[r]);
        if (r + 1 < n) s += std::abs(upper[r]);
        m = std::max(m, s);
    }
    return m;
}

TridiagonalLU::TridiagonalLU(const TridiagonalMatrix& a) {
    const int n = a.size();
    d_ = a.diag;
    dl_.assign(std::max(n - 1, 0), 0.0);
    du_.assign(std::max(n - 1, 0), 0.0);
    du2_.assign(std::max(n - 2, 0), 0.0);
    pivot_.resize(std::max(n - 1, 0));
    for (int r = 0; r + 1 < n; ++r) {
        dl_[r] = a.lower[r + 1];
        du_[r] = a.upper[r];
        pivot_[r] = r;
    }

    for (int r = 0; r + 1 < n; ++r) {
        if (std::abs(d_[r]) >= std::abs(dl_[r])) {
            if (d_[r] != 0.0) {
                const double fact = dl_[r] / d_[r];
                dl_[r] = fact;
                d_[r + 1] -= fact * du_[r];
            }
        } else {
            const double fact = d_[r] / dl_[r];
            d_[r] = dl_[r];
            dl_[r] = fact;
            const double temp = du_[r];
            du_[r] = d_[r + 1];
            d_[r + 1] = temp - fact * d_[r + 1];
            if (r + 2 < n) {
                du2_[r] = du_[r + 1];
                du_[r + 1] = -fact * du_[r + 1];
            }
            pivot_[r] = r + 1;
            ++swaps_;
        }
    }
    singular_ = n == 0 || std::any_of(d_.begin(), d_.end(), [](double x) { return x == 0.0 || !std::isfinite(x); });
}

std::vector<double> TridiagonalLU::solve(std::span<const double> rhs) const {
    const int n = static_cast<int>(d_.size());
    if (static_cast<int>(rhs.size()) != n) throw Error(ErrorKind::Index, "tridiagonal solve: size mismatch");
    if (singular_) throw Error(ErrorKind::Solver, "tridiagonal solve: singular matrix");
    std::vector<double> b(rhs.begin(), rhs.end());
    for (int r = 0; r + 1 < n; ++r) {
        if (pivot_[r] == r) {
            b[r + 1] -= dl_[r] * b[r];
        } else {
            const double temp = b[r];
            b[r] = b[r + 1];
            b[r + 1] = temp - dl_[r] * b[r];
        }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (int r = n - 3; r >= 0; --r) {
        b[r] = (b[r] - du_[r] * b[r + 1] - du2_[r] * b[r + 2]) / d_[r];
    }
    return b;
}

double TridiagonalLU::min_abs_pivot() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (double x : d_) m = std::min(m, std::abs(x));
    return d_.empty() ? 0.0 : m;
}

double TridiagonalLU::log_abs_determinant() const noexcept {
    if (singular_) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double x : d_) s += std::log(std::abs(x));
    return s;
}

int TridiagonalLU::determinant_sign() const noexcept {
    if (singular_) return 0;
    int sign = swaps_ % 2 == 0 ? 1 : -1;
    for (double x : d_)
        if (x < 0.0) sign = -sign;
    return sign;
}

}  // namespace monoscheme
