// Measures of non-monotonicity for 1D sequences and 3D mesh functions.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoscheme/grid.hpp"

namespace monoscheme {

/// True iff u alternates strictly on [k, l]: every i in k+1..l-1 of one
/// parity is a strict local minimum and every i of the other parity a strict
/// local maximum. Throws Error(UndefinedInterval) if l - k < 2 or the
/// interval leaves the sequence.
bool oscillates_point_to_point(std::span<const double> u, std::size_t k, std::size_t l);

/// Number of i in 1..size-2 with u_i strictly above or strictly below both
/// neighbours.
std::size_t count_extrema_1d(std::span<const double> u) noexcept;

/// f(u) = max_{i=k..l-1} |u_{i+1} - u_i|. Lipschitz in the C-norm with K = 2.
/// Throws Error(UndefinedInterval) unless k < l < u.size().
double max_step_change(std::span<const double> u, std::size_t k, std::size_t l);
/// Over the whole sequence; 0 for fewer than two values.
double max_step_change(std::span<const double> u);

/// Inclusive index box on a Mesh3D.
struct Region3D {
    int i0 = 0, i1 = -1;
    int j0 = 0, j1 = -1;
    int k0 = 0, k1 = -1;

    static Region3D cube(int first, int last) { return {first, last, first, last, first, last}; }
    /// Cells with all six neighbours inside the mesh: 1..N-2 on every axis.
    static Region3D interior(int N) { return cube(1, N - 2); }

    bool empty() const noexcept { return i1 < i0 || j1 < j0 || k1 < k0; }
    bool contains(const CellIndex& c) const noexcept {
        return c.i >= i0 && c.i <= i1 && c.j >= j0 && c.j <= j1 && c.k >= k0 && c.k <= k1;
    }
};

/// Cells of `region` that have a full six-neighbour set in the mesh and are
/// strictly greater, or strictly smaller, than all six neighbours. Ties are
/// not extrema. Returned in flat (i-fastest) order.
std::vector<CellIndex> find_extrema_3d(const MeshFunction3D& u, const Region3D& region);
std::size_t count_extrema_3d(const MeshFunction3D& u, const Region3D& region);

struct Sharpness {
    double a = 0.0;  ///< max over S of the largest neighbour jump
    double b = 0.0;  ///< max over S of the smallest neighbour jump
};

/// Sharpness of the cells in S. Throws Error(EmptySet) for an empty S and
/// Error(Index) if a cell lacks one of its six neighbours.
Sharpness sharpness_metrics(const MeshFunction3D& u, std::span<const CellIndex> S);

struct ClosenessInputs {
    double delta = 0.0;    ///< f(u)
    double k = 0.0;        ///< f(Mu) / f(u)
    double epsilon = 0.0;  ///< ||u - v||_C
    double K = 2.0;        ///< Lipschitz constant of f
    double normM = 1.0;    ///< ||M||_C
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Bounds on k1 = f(Mv)/delta:
///   lo = (k delta - K |M| eps) / (delta + eps),  hi = (k delta + K |M| eps) / (delta - eps).
/// Throws Error(PremiseViolation) unless delta > 0, 0 < k < 1, eps >= 0,
/// eps < delta and K |M| eps < k delta.
Interval closeness_interval(const ClosenessInputs& in);

struct ClosenessReport {
    double delta = 0.0;
    double k = 0.0;
    double epsilon = 0.0;
    double K = 2.0;
    double normM = 1.0;
    double k1 = 0.0;  ///< f(Mv) / delta
    bool premises_hold = false;
    std::string failed_premise;  ///< empty when premises hold
    Interval interval;
    bool k1_inside = false;

    bool passed() const noexcept { return premises_hold && k1_inside; }
};

using SequenceMap = std::function<std::vector<double>(std::span<const double>)>;
using Functional = std::function<double(std::span<const double>)>;

/// Evaluates the closeness argument for a base solution u and auxiliary
/// solution v: delta = f(u), k = f(Mu)/delta, eps = ||u - v||_C, k1 =
/// f(Mv)/delta, and whether k1 lies in closeness_interval. A zero epsilon is
/// accepted (the interval collapses to k). Throws Error(DegenerateInput) if
/// f(u) = 0.
ClosenessReport check_closeness(std::span<const double> u, std::span<const double> v, const SequenceMap& apply_m,
                        const Functional& f, double K = 2.0, double normM = 1.0);

}  // namespace monoscheme
