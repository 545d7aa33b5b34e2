#include "monoscheme/ns3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monoscheme/errors.hpp"

namespace monoscheme {

void validate(const FlowConfig& cfg) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::Configuration, "flow config: " + what); };
    if (!(cfg.L > 0.0 && std::isfinite(cfg.L))) fail("L must be positive");
    if (cfg.N < 4) fail("N must be at least 4");
    if (!(cfg.rho > 0.0 && std::isfinite(cfg.rho))) fail("rho must be positive");
    if (!(cfg.nu > 0.0 && std::isfinite(cfg.nu))) fail("nu must be positive");
    if (!std::isfinite(cfg.p0) || !std::isfinite(cfg.p1)) fail("p0 and p1 must be finite");
    if (cfg.hole_first < 0 || cfg.hole_last >= cfg.N || cfg.hole_first > cfg.hole_last) {
        fail("hole range must lie within 0..N-1");
    }
    if (cfg.sigma_v && !(*cfg.sigma_v >= 0.0 && std::isfinite(*cfg.sigma_v))) fail("sigma_v must be >= 0");
    if (cfg.sigma_p && !std::isfinite(*cfg.sigma_p)) fail("sigma_p must be finite");
    if (!(cfg.tol > 0.0)) fail("tol must be positive");
    if (cfg.max_iters < 0) fail("max_iters must be >= 0");
}

double default_sigma_v(const FlowConfig& cfg) {
    const double h = cfg.L / cfg.N;
    return 0.9 * h * h / (6.0 * cfg.nu);
}

double default_sigma_p(const FlowConfig& cfg) {
    const double h = cfg.L / cfg.N;
    return -cfg.rho * h * h / (4.0 * resolved_sigma_v(cfg));
}

double resolved_sigma_v(const FlowConfig& cfg) { return cfg.sigma_v.value_or(default_sigma_v(cfg)); }

double resolved_sigma_p(const FlowConfig& cfg) {
    return cfg.sigma_p ? *cfg.sigma_p : default_sigma_p(cfg);
}

Mesh3D flow_mesh(const FlowConfig& cfg) { return make_mesh_3d(cfg.L, cfg.N); }

BoundaryPolicy3D make_flow_policy(const FlowConfig& cfg) {
    const int N = cfg.N;
    const int a = cfg.hole_first, b = cfg.hole_last;

    ScalarBoundary velocity = ScalarBoundary::uniform(N, FaceRule::dirichlet(0.0));
    velocity.set_patch(Face::XMin, a, b, a, b, FaceRule::mirror());
    velocity.set_patch(Face::XMax, a, b, a, b, FaceRule::mirror());

    ScalarBoundary pressure = ScalarBoundary::uniform(N, FaceRule::one_sided());
    pressure.set_patch(Face::XMin, a, b, a, b, FaceRule::dirichlet(cfg.p0));
    pressure.set_patch(Face::XMax, a, b, a, b, FaceRule::dirichlet(cfg.p1));

    return BoundaryPolicy3D{velocity, velocity, velocity, pressure};
}

double max_norm(const FlowField& f) noexcept {
    return std::max({max_norm(f.vx.values), max_norm(f.vy.values), max_norm(f.vz.values), max_norm(f.p.values)});
}

const char* to_string(FlowVariant v) noexcept { return v == FlowVariant::Base ? "base" : "monotonized"; }

FlowField init_field(const FlowConfig& cfg) {
    validate(cfg);
    const Mesh3D mesh = flow_mesh(cfg);
    FlowField f(mesh);
    f.p = sample(mesh, [&](double x, double, double) { return cfg.p0 + (cfg.p1 - cfg.p0) * x / cfg.L; });
    return f;
}

FlowField monotonize_velocity(const FlowField& field, const BoundaryPolicy3D& policy) {
    FlowField y(field.mesh());
    y.vx = apply_m_3d(field.vx, policy.vx);
    y.vy = apply_m_3d(field.vy, policy.vy);
    y.vz = apply_m_3d(field.vz, policy.vz);
    y.p = field.p;
    return y;
}

namespace {

// Evaluates R at every cell from padded copies of the current iterate.
MomentumResidual residual_impl(const FlowField& f, const FlowConfig& cfg, const BoundaryPolicy3D& pol,
                               Advecting advecting) {
    const Mesh3D& mesh = f.mesh();
    const int N = mesh.N;
    const double h = mesh.h;
    const double inv2h = 0.5 / h, invh2 = 1.0 / (h * h);
    const double inv_rho = 1.0 / cfg.rho;

    const PaddedField px(f.vx, pol.vx), py(f.vy, pol.vy), pz(f.vz, pol.vz), pp(f.p, pol.p);
    const std::size_t sx = px.stride(Axis::X), sy = px.stride(Axis::Y), sz = px.stride(Axis::Z);

    std::optional<FlowField> w;
    if (advecting == Advecting::Monotonized) w = monotonize_velocity(f, pol);
    const FlowField& adv = w ? *w : f;

    MomentumResidual r{MeshFunction3D(mesh), MeshFunction3D(mesh), MeshFunction3D(mesh)};
    std::size_t flat = 0;
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < N; ++i, ++flat) {
                const std::size_t c = px.at(i, j, k);
                const double wx = adv.vx.values[flat], wy = adv.vy.values[flat], wz = adv.vz.values[flat];
                auto component = [&](const PaddedField& u, std::size_t s_dir) {
                    const double advect = wx * (u[c + sx] - u[c - sx]) + wy * (u[c + sy] - u[c - sy]) +
                                          wz * (u[c + sz] - u[c - sz]);
                    const double lap =
                        (u[c + sx] + u[c - sx]) + (u[c + sy] + u[c - sy]) + (u[c + sz] + u[c - sz]) - 6.0 * u[c];
                    const double dp = pp[c + s_dir] - pp[c - s_dir];
                    return -advect * inv2h - inv_rho * dp * inv2h + cfg.nu * lap * invh2;
                };
                r.x.values[flat] = component(px, sx);
                r.y.values[flat] = component(py, sy);
                r.z.values[flat] = component(pz, sz);
            }
        }
    }
    return r;
}

FlowField sweep(const FlowField& f, const FlowConfig& cfg, const BoundaryPolicy3D& pol, FlowVariant variant,
                IterationNorms& norms) {
    const double sigma_v = resolved_sigma_v(cfg);
    const double sigma_p = resolved_sigma_p(cfg);
    const MomentumResidual r =
        residual_impl(f, cfg, pol, variant == FlowVariant::Base ? Advecting::Raw : Advecting::Monotonized);

    FlowField next(f.mesh());
    double upd = 0.0;
    const std::size_t n = f.vx.size();
    for (std::size_t c = 0; c < n; ++c) {
        const double dx = sigma_v * r.x.values[c], dy = sigma_v * r.y.values[c], dz = sigma_v * r.z.values[c];
        next.vx.values[c] = f.vx.values[c] + dx;
        next.vy.values[c] = f.vy.values[c] + dy;
        next.vz.values[c] = f.vz.values[c] + dz;
        upd = std::max({upd, std::abs(dx), std::abs(dy), std::abs(dz)});
    }
    const MeshFunction3D div = div_3d(next.vx, next.vy, next.vz, pol);
    double dmax = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        next.p.values[c] = f.p.values[c] + sigma_p * div.values[c];
        dmax = std::max(dmax, std::abs(div.values[c]));
    }
    norms.update = upd;
    norms.divergence = dmax;
    if (!std::isfinite(upd) || !std::isfinite(dmax) || !std::isfinite(max_norm(next))) {
        throw Error(ErrorKind::Divergence, "flow iteration produced non-finite values");
    }
    return next;
}

}  // namespace

MomentumResidual momentum_residual(const FlowField& field, const FlowConfig& cfg, Advecting advecting) {
    validate(cfg);
    return residual_impl(field, cfg, make_flow_policy(cfg), advecting);
}

FlowField iterate(const FlowField& field, const FlowConfig& cfg, FlowVariant variant, IterationNorms* norms) {
    validate(cfg);
    IterationNorms local;
    FlowField next = sweep(field, cfg, make_flow_policy(cfg), variant, local);
    if (norms) *norms = local;
    return next;
}

SolutionReport solve_steady(const FlowConfig& cfg, FlowVariant variant) {
    return solve_steady(cfg, variant, init_field(cfg));
}

SolutionReport solve_steady(const FlowConfig& cfg, FlowVariant variant, FlowField start) {
    validate(cfg);
    const BoundaryPolicy3D pol = make_flow_policy(cfg);
    SolutionReport rep{std::move(start), variant, std::nullopt, 0, false, {}, 0.0, 0.0};
    const Advecting advecting = variant == FlowVariant::Base ? Advecting::Raw : Advecting::Monotonized;
    const double sigma_v = resolved_sigma_v(cfg);

    // Norms of the starting field, so that a field that is already steady
    // is reported as converged after zero sweeps.
    {
        const MomentumResidual r = residual_impl(rep.field, cfg, pol, advecting);
        const MeshFunction3D div = div_3d(rep.field.vx, rep.field.vy, rep.field.vz, pol);
        rep.final_norms.update =
            sigma_v * std::max({max_norm(r.x.values), max_norm(r.y.values), max_norm(r.z.values)});
        rep.final_norms.divergence = max_norm(div.values);
    }
    auto done = [&] { return rep.final_norms.update <= cfg.tol && rep.final_norms.divergence <= cfg.tol; };

    while (!done() && rep.iterations < cfg.max_iters) {
        try {
            rep.field = sweep(rep.field, cfg, pol, variant, rep.final_norms);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Divergence) throw;
            std::ostringstream os;
            os << "flow iteration diverged at iteration " << rep.iterations + 1;
            throw Error(ErrorKind::Divergence, os.str());
        }
        ++rep.iterations;
    }
    rep.converged = done();

    const MomentumResidual r = residual_impl(rep.field, cfg, pol, advecting);
    rep.momentum_residual = std::max({max_norm(r.x.values), max_norm(r.y.values), max_norm(r.z.values)});
    rep.divergence_residual = max_norm(div_3d(rep.field.vx, rep.field.vy, rep.field.vz, pol).values);
    if (variant == FlowVariant::Monotonized) rep.y = monotonize_velocity(rep.field, pol);
    return rep;
}

int centerline_index(const FlowConfig& cfg) noexcept { return (cfg.hole_first + cfg.hole_last) / 2; }

std::vector<std::pair<double, double>> centerline_profile(const FlowField& field, const FlowConfig& cfg,
                                                          Axis component) {
    const int c = centerline_index(cfg);
    const MeshFunction3D& u = field.velocity(component);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(u.mesh.N));
    for (int i = 0; i < u.mesh.N; ++i) out.emplace_back(u.mesh.center(i), u(i, c, c));
    return out;
}

}  // namespace monoscheme
