// Tridiagonal matrices and their LU factorisation with partial pivoting
// (the same elimination order as LAPACK ?gttrf / ?gttrs).
#pragma once

#include <span>
#include <vector>

namespace monoscheme {

struct TridiagonalMatrix {
    std::vector<double> lower;  ///< lower[r] = A(r, r-1); lower[0] unused
    std::vector<double> diag;   ///< diag[r] = A(r, r)
    std::vector<double> upper;  ///< upper[r] = A(r, r+1); upper[n-1] unused

    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(int n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    /// Constant bands (lo, di, up) on every row.
    static TridiagonalMatrix toeplitz(int n, double lo, double di, double up);

    int size() const noexcept { return static_cast<int>(diag.size()); }

    std::vector<double> multiply(std::span<const double> x) const;

    /// Max absolute row sum, the operator norm induced by the max-norm.
    double norm_c() const noexcept;
};

class TridiagonalLU {
public:
    /// Never throws; check singular() before solve().
    explicit TridiagonalLU(const TridiagonalMatrix& a);

    bool singular() const noexcept { return singular_; }

    /// Solves A x = rhs. Throws Error(Solver) if the factorisation is singular.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// min |u_rr| over the pivots of U.
    double min_abs_pivot() const noexcept;
    /// sum log|u_rr|; -inf when singular.
    double log_abs_determinant() const noexcept;
    /// +1, -1, or 0 when singular.
    int determinant_sign() const noexcept;

private:
    std::vector<double> dl_, d_, du_, du2_;
    std::vector<int> pivot_;
    bool singular_ = false;
    int swaps_ = 0;
};

}  // namespace monoscheme
