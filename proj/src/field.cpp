#include "boreforge/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boreforge/stencils.hpp"

namespace boreforge {

long double GeometryOps::mean_curvature(std::size_t ix) const {
    const long double zp = eps * dzeta[ix];
    const long double den = powl(1.0L + zp * zp, 1.5L);
    return eps * ddzeta[ix] / den;
}

GeometryOps geometry_ops(const FieldGrid& grid) {
    GeometryOps geom;
    geom.eps = grid.eps;
    geom.zeta = grid.zeta;
    const std::size_t nx = grid.nx();
    geom.dzeta.resize(nx);
    geom.ddzeta.resize(nx);
    const long double hx = grid.hx();
    for (std::size_t i = 0; i < nx; ++i) {
        geom.dzeta[i] = stencil::d1(grid.zeta.data(), nx, i, 1, hx);
        geom.ddzeta[i] = stencil::d2(grid.zeta.data(), nx, i, 1, hx);
        if (!(grid.zeta[i] > 0.0L))
            throw std::runtime_error("geometry_ops: zeta must be positive");
    }
    return geom;
}

FieldGrid reconstruct(const ShallowProfile& profile, const PhysParams& params,
                      const GridSpec& spec) {
    if (spec.nx < 8 || spec.ny < 8)
        throw std::domain_error("reconstruct: grid too small");
    double x_min = spec.x_min, x_max = spec.x_max;
    if (x_min == x_max) {
        x_min = profile.x_begin();
        x_max = profile.x_end();
    }
    if (x_min < profile.x_begin() - 1e-12 || x_max > profile.x_end() + 1e-12)
        throw std::domain_error("reconstruct: grid outside orbit domain");

    const TunedConstants tc = tune(params);
    const long double eps = params.eps;
    const long double e2 = eps * eps;

    FieldGrid g;
    g.eps = params.eps;
    g.gamma_bar = tc.gamma_bar;
    g.speed_c = 4.0 + params.eps * params.eps * tc.gamma_bar;
    g.drive = 4.0 * params.a;
    g.flux_rhs = tc.A_hat;
    g.frame = spec.frame;
    g.x.resize(spec.nx);
    g.s.resize(spec.ny);
    for (std::size_t i = 0; i < spec.nx; ++i)
        g.x[i] = x_min + (x_max - x_min) * static_cast<double>(i) / (spec.nx - 1);
    for (std::size_t j = 0; j < spec.ny; ++j)
        g.s[j] = static_cast<double>(j) / (spec.ny - 1);

    g.zeta.resize(spec.nx);
    g.u1.assign(spec.nx * spec.ny, 0.0L);
    g.u2.assign(spec.nx * spec.ny, 0.0L);
    g.p.assign(spec.nx * spec.ny, 0.0L);

    const long double shift = spec.frame == Frame::Traveling ? g.speed_c : 0.0L;

    for (std::size_t i = 0; i < spec.nx; ++i) {
        const ProfileSample ps = profile.at(g.x[i]);
        const long double H = ps.H;
        g.zeta[i] = H;
        for (std::size_t j = 0; j < spec.ny; ++j) {
            const long double q = g.s[j] * H; // = y*zeta/eps
            long double v1 = ps.U;
            long double v2 = -g.s[j] * eps * H * ps.Up;
            long double pr = ps.P;
            if (spec.include_correction) {
                v1 += e2 * (q * ps.U1 + 0.5L * q * q * ps.U2);
                v2 -= e2 * eps * (0.5L * q * q * ps.U1p + (q * q * q / 6.0L) * ps.U2p);
                pr += e2 * (q * ps.P1 + 0.5L * q * q * ps.P2);
            }
            g.u1[g.idx(i, j)] = v1 - shift;
            g.u2[g.idx(i, j)] = v2;
            g.p[g.idx(i, j)] = pr;
        }
    }
    return g;
}

FieldGrid reflect_x(const FieldGrid& grid) {
    FieldGrid r = grid;
    r.speed_c = -grid.speed_c;
    r.drive = -grid.drive;
    r.flux_rhs = -grid.flux_rhs;
    const std::size_t nx = grid.nx(), ny = grid.ny();
    for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t m = nx - 1 - i;
        r.x[i] = -grid.x[m];
        r.zeta[i] = grid.zeta[m];
        for (std::size_t j = 0; j < ny; ++j) {
            r.u1[r.idx(i, j)] = -grid.u1[grid.idx(m, j)];
            r.u2[r.idx(i, j)] = grid.u2[grid.idx(m, j)];
            r.p[r.idx(i, j)] = grid.p[grid.idx(m, j)];
        }
    }
    return r;
}

double divergence_check(const FieldGrid& grid, const GeometryOps& geom) {
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const long double hx = grid.hx(), hs = grid.hs();
    const long double eps = grid.eps;
    long double worst = 0.0L;
    for (std::size_t i = 2; i + 2 < nx; ++i) {
        for (std::size_t j = 2; j + 2 < ny; ++j) {
            const long double du1_dx = stencil::d1(grid.u1.data() + j, nx, i, ny, hx);
            const long double du1_ds = stencil::d1(grid.u1.data() + i * ny, ny, j, 1, hs);
            const long double du2_ds = stencil::d1(grid.u2.data() + i * ny, ny, j, 1, hs);
            const long double zeta = geom.zeta[i], dz = geom.dzeta[i];
            const long double d1A = du1_dx - (grid.s[j] * dz / zeta) * du1_ds;
            const long double d2A = du2_ds / (zeta * eps);
            worst = std::max(worst, fabsl(d1A + d2A));
        }
    }
    return static_cast<double>(worst);
}

namespace {

// bilinear sample of a nx*ny field at fractional grid coordinates
long double sample_bilinear(const std::vector<long double>& f, std::size_t nx,
                            std::size_t ny, double fx, double fy) {
    fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(fx), nx - 2);
    const std::size_t j = std::min(static_cast<std::size_t>(fy), ny - 2);
    const long double ax = fx - i, ay = fy - j;
    return (1 - ax) * (1 - ay) * f[i * ny + j] + ax * (1 - ay) * f[(i + 1) * ny + j]
         + (1 - ax) * ay * f[i * ny + j + 1] + ax * ay * f[(i + 1) * ny + j + 1];
}

} // namespace

StreamlineData streamlines_and_vorticity(const FieldGrid& grid, const StreamlineOpts& opts) {
    if (grid.frame != Frame::Traveling)
        throw std::domain_error("streamlines_and_vorticity: grid must be in the traveling frame");
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const GeometryOps geom = geometry_ops(grid);
    const long double hx = grid.hx(), hs = grid.hs();
    const long double eps = grid.eps;

    StreamlineData out;
    out.omega.resize(nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const long double du2_dx = stencil::d1(grid.u2.data() + j, nx, i, ny, hx);
            const long double du2_ds = stencil::d1(grid.u2.data() + i * ny, ny, j, 1, hs);
            const long double du1_ds = stencil::d1(grid.u1.data() + i * ny, ny, j, 1, hs);
            const long double zeta = geom.zeta[i], dz = geom.dzeta[i];
            // physical-coordinate derivatives via the flattening chain rule
            const long double d1A_u2 = du2_dx - (grid.s[j] * dz / zeta) * du2_ds;
            const long double d2A_u1 = du1_ds / (zeta * eps);
            out.omega[i * ny + j] = static_cast<double>(d1A_u2 - d2A_u1);
        }
    }

    // velocity in (x, s) chart: dx/dt = u1, ds/dt = (u2 - s eps zeta' u1)/(eps zeta)
    auto chart_vel = [&](double xv, double sv, double& vx, double& vs) {
        const double fx = (xv - grid.x.front()) / static_cast<double>(hx);
        const double fy = sv / static_cast<double>(hs);
        const double u1 = static_cast<double>(sample_bilinear(grid.u1, nx, ny, fx, fy));
        const double u2 = static_cast<double>(sample_bilinear(grid.u2, nx, ny, fx, fy));
        const std::size_t i = std::min(
            static_cast<std::size_t>(std::clamp(fx, 0.0, static_cast<double>(nx - 1))), nx - 1);
        const double zeta = static_cast<double>(geom.zeta[i]);
        const double dz = static_cast<double>(geom.dzeta[i]);
        vx = u1;
        vs = (u2 - sv * static_cast<double>(eps) * dz * u1) / (static_cast<double>(eps) * zeta);
    };

    for (std::size_t k = 0; k < opts.seed_count; ++k) {
        const double s0 = (k + 0.5) / static_cast<double>(opts.seed_count);
        double xv = grid.x.front(), sv = s0;
        // traveling-frame horizontal speed is negative (u1 < 4 < c), so seeds
        // placed at the left edge exit there immediately; launch from the
        // right edge instead when the flow points left.
        double vx0, vs0;
        chart_vel(xv, sv, vx0, vs0);
        if (vx0 < 0.0) xv = grid.x.back();
        std::vector<std::pair<double, double>> line;
        for (std::size_t it = 0; it < opts.max_points; ++it) {
            if (xv < grid.x.front() || xv > grid.x.back() || sv < 0.0 || sv > 1.0) break;
            const double fx = (xv - grid.x.front()) / static_cast<double>(hx);
            const std::size_t i = std::min(static_cast<std::size_t>(std::max(fx, 0.0)), nx - 1);
            line.emplace_back(xv, sv * static_cast<double>(eps)
                                      * static_cast<double>(geom.zeta[i]));
            double k1x, k1s, k2x, k2s, k3x, k3s, k4x, k4s;
            const double h = opts.step;
            chart_vel(xv, sv, k1x, k1s);
            chart_vel(xv + 0.5 * h * k1x, sv + 0.5 * h * k1s, k2x, k2s);
            chart_vel(xv + 0.5 * h * k2x, sv + 0.5 * h * k2s, k3x, k3s);
            chart_vel(xv + h * k3x, sv + h * k3s, k4x, k4s);
            xv += (h / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x);
            sv += (h / 6.0) * (k1s + 2 * k2s + 2 * k3s + k4s);
        }
        if (line.size() > 1) out.streamlines.push_back(std::move(line));
        else out.warnings.push_back("seed " + std::to_string(k) + " skipped (outside domain)");
    }
    return out;
}

std::pair<double, double> residual_window(const OrbitSolution& orbit, double tail_cut) {
    const std::size_t n = orbit.t.size();
    std::size_t lo = 0, hi = n - 1;
    auto dist = [&](std::size_t k, double lim) {
        return std::hypot(orbit.rho[k] - lim, orbit.rho_prime[k]);
    };
    while (lo + 1 < hi && dist(lo, orbit.rho_limit_neg) < tail_cut) ++lo;
    while (hi > lo + 1 && dist(hi, orbit.rho_limit_pos) < tail_cut) --hi;
    return {orbit.t[lo], orbit.t[hi]};
}

} // namespace boreforge
