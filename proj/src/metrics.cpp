#include "monoscheme/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "monoscheme/errors.hpp"

namespace monoscheme {

bool oscillates_point_to_point(std::span<const double> u, std::size_t k, std::size_t l) {
    if (l < k + 2 || l >= u.size()) {
        std::ostringstream os;
        os << "oscillation interval [" << k << ", " << l << "] needs at least 3 points inside a sequence of "
           << u.size();
        throw Error(ErrorKind::UndefinedInterval, os.str());
    }
    // even_min: even i are minima and odd i maxima; !even_min: the reverse.
    bool even_min = true, odd_min = true;
    for (std::size_t i = k + 1; i < l; ++i) {
        const bool is_min = u[i - 1] > u[i] && u[i + 1] > u[i];
        const bool is_max = u[i - 1] < u[i] && u[i + 1] < u[i];
        if (i % 2 == 0) {
            even_min = even_min && is_min;
            odd_min = odd_min && is_max;
        } else {
            even_min = even_min && is_max;
            odd_min = odd_min && is_min;
        }
    }
    return even_min || odd_min;
}

std::size_t count_extrema_1d(std::span<const double> u) noexcept {
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        const bool hi = u[i] > u[i - 1] && u[i] > u[i + 1];
        const bool lo = u[i] < u[i - 1] && u[i] < u[i + 1];
        if (hi || lo) ++count;
    }
    return count;
}

double max_step_change(std::span<const double> u, std::size_t k, std::size_t l) {
    if (!(k < l) || l >= u.size()) throw Error(ErrorKind::UndefinedInterval, "max_step_change: need k < l < size");
    double f = 0.0;
    for (std::size_t i = k; i < l; ++i) f = std::max(f, std::abs(u[i + 1] - u[i]));
    return f;
}

double max_step_change(std::span<const double> u) {
    return u.size() < 2 ? 0.0 : max_step_change(u, 0, u.size() - 1);
}

namespace {

bool full_neighbourhood(const CellIndex& c, int N) {
    return c.i >= 1 && c.j >= 1 && c.k >= 1 && c.i <= N - 2 && c.j <= N - 2 && c.k <= N - 2;
}

template <class Visit>
void for_each_neighbour(const MeshFunction3D& u, const CellIndex& c, Visit&& visit) {
    visit(u(c.i - 1, c.j, c.k));
    visit(u(c.i + 1, c.j, c.k));
    visit(u(c.i, c.j - 1, c.k));
    visit(u(c.i, c.j + 1, c.k));
    visit(u(c.i, c.j, c.k - 1));
    visit(u(c.i, c.j, c.k + 1));
}

}  // namespace

std::vector<CellIndex> find_extrema_3d(const MeshFunction3D& u, const Region3D& region) {
    std::vector<CellIndex> out;
    const int N = u.mesh.N;
    const int k0 = std::max(region.k0, 1), k1 = std::min(region.k1, N - 2);
    const int j0 = std::max(region.j0, 1), j1 = std::min(region.j1, N - 2);
    const int i0 = std::max(region.i0, 1), i1 = std::min(region.i1, N - 2);
    for (int k = k0; k <= k1; ++k) {
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                const double c = u(i, j, k);
                bool above = true, below = true;
                for_each_neighbour(u, CellIndex{i, j, k}, [&](double nb) {
                    above = above && c > nb;
                    below = below && c < nb;
                });
                if (above || below) out.push_back(CellIndex{i, j, k});
            }
        }
    }
    return out;
}

std::size_t count_extrema_3d(const MeshFunction3D& u, const Region3D& region) {
    return find_extrema_3d(u, region).size();
}

Sharpness sharpness_metrics(const MeshFunction3D& u, std::span<const CellIndex> S) {
    if (S.empty()) throw Error(ErrorKind::EmptySet, "sharpness_metrics: empty extremum set");
    Sharpness s{0.0, 0.0};
    for (const CellIndex& cell : S) {
        if (!full_neighbourhood(cell, u.mesh.N)) {
            throw Error(ErrorKind::Index, "sharpness_metrics: cell without a full neighbour set");
        }
        const double c = u(cell.i, cell.j, cell.k);
        double largest = 0.0, smallest = std::numeric_limits<double>::infinity();
        for_each_neighbour(u, cell, [&](double nb) {
            const double d = std::abs(c - nb);
            largest = std::max(largest, d);
            smallest = std::min(smallest, d);
        });
        s.a = std::max(s.a, largest);
        s.b = std::max(s.b, smallest);
    }
    return s;
}

namespace {

// Empty string when all premises hold, otherwise the first failing one.
std::string failing_premise(const ClosenessInputs& in) {
    std::ostringstream os;
    if (!(in.delta > 0.0)) {
        os << "delta > 0 fails (delta = " << in.delta << ")";
    } else if (!(in.k > 0.0 && in.k < 1.0)) {
        os << "0 < k < 1 fails (k = " << in.k << ")";
    } else if (!(in.epsilon >= 0.0)) {
        os << "epsilon >= 0 fails (epsilon = " << in.epsilon << ")";
    } else if (!(in.epsilon < in.delta)) {
        os << "epsilon < delta fails (" << in.epsilon << " >= " << in.delta << ")";
    } else if (!(in.K * in.normM * in.epsilon < in.k * in.delta)) {
        os << "K*|M|*epsilon < k*delta fails (" << in.K * in.normM * in.epsilon << " >= " << in.k * in.delta << ")";
    }
    return os.str();
}

}  // namespace

Interval closeness_interval(const ClosenessInputs& in) {
    if (const std::string why = failing_premise(in); !why.empty()) {
        throw Error(ErrorKind::PremiseViolation, "closeness_interval: " + why);
    }
    const double spread = in.K * in.normM * in.epsilon;
    return Interval{(in.k * in.delta - spread) / (in.delta + in.epsilon),
                    (in.k * in.delta + spread) / (in.delta - in.epsilon)};
}

ClosenessReport check_closeness(std::span<const double> u, std::span<const double> v, const SequenceMap& apply_m,
                        const Functional& f, double K, double normM) {
    if (u.size() != v.size()) throw Error(ErrorKind::Index, "check_closeness: u and v differ in size");
    ClosenessReport r;
    r.K = K;
    r.normM = normM;
    r.delta = f(u);
    if (!(r.delta > 0.0)) {
        throw Error(ErrorKind::DegenerateInput, "check_closeness: f(u) = 0, nothing to monotonize");
    }
    const std::vector<double> Mu = apply_m(u);
    const std::vector<double> Mv = apply_m(v);
    r.k = f(Mu) / r.delta;
    r.k1 = f(Mv) / r.delta;
    r.epsilon = max_norm_diff(u, v);

    const ClosenessInputs in{r.delta, r.k, r.epsilon, K, normM};
    r.failed_premise = failing_premise(in);
    r.premises_hold = r.failed_premise.empty();
    if (r.premises_hold) {
        r.interval = closeness_interval(in);
        // Closed bounds so that epsilon = 0 (interval collapsed to k) is accepted.
        r.k1_inside = r.k1 >= r.interval.lo && r.k1 <= r.interval.hi;
    }
    return r;
}

}  // namespace monoscheme
