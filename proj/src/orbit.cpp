#include "boreforge/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boreforge/dopri5.hpp"

namespace boreforge {

namespace {

struct FG {
    double mu, a, g, A;
    double F(double x) const {
        return (a / (mu * A)) * (1.0 - std::exp(x) - (A / 4.0) * std::exp(-x));
    }
    double G(double x) const {
        return (1.0 / (4.0 * mu)) * (A * std::exp(-x) - (g / A) * std::exp(2.0 * x));
    }
    double dF(double x) const {
        return (a / (mu * A)) * (-std::exp(x) + (A / 4.0) * std::exp(-x));
    }
};

} // namespace

EquilibriumSpectrum linearize(EquilibriumPoint at, const PhysParams& params) {
    const Equilibria eq = equilibria(params.A);
    const FG fg{params.mu, params.a, params.g, params.A};
    const double x = at == EquilibriumPoint::RhoMinus ? eq.rho_minus : eq.rho_plus;
    const double Gx = fg.G(x);
    const double Fpx = fg.dF(x);
    const double disc = Gx * Gx + 4.0 * Fpx;

    EquilibriumSpectrum s;
    s.at = at;
    s.real_eigenvalues = disc >= 0.0;
    if (s.real_eigenvalues) {
        const double r = std::sqrt(disc);
        s.lambda_plus = (-Gx + r) / 2.0;
        s.lambda_minus = (-Gx - r) / 2.0;
        s.tangent_unstable = {1.0, s.lambda_plus.real()};
        s.tangent_stable = {1.0, s.lambda_minus.real()};
    } else {
        const double r = std::sqrt(-disc);
        s.lambda_plus = {-Gx / 2.0, r / 2.0};
        s.lambda_minus = {-Gx / 2.0, -r / 2.0};
        s.tangent_unstable = {0.0, 0.0};
        s.tangent_stable = {0.0, 0.0};
    }

    if (at == EquilibriumPoint::RhoMinus) {
        // F'(rho_-) > 0 forces a real saddle; anything else is a params bug.
        if (!s.real_eigenvalues || !(s.lambda_minus.real() < 0.0 && s.lambda_plus.real() > 0.0))
            throw std::runtime_error("linearize: rho_- is not a saddle (invalid parameters)");
        const double vprime = std::sqrt(Fpx);
        if (Gx > 0.0) {
            if (!(s.lambda_minus.real() < -vprime && s.lambda_plus.real() < vprime))
                throw std::runtime_error("linearize: eigenvalue cone bound violated");
        } else if (Gx < 0.0) {
            if (!(s.lambda_minus.real() > -vprime && s.lambda_plus.real() > vprime))
                throw std::runtime_error("linearize: eigenvalue cone bound violated");
        }
        s.character = LinearCharacter::Hyperbolic;
    } else {
        if (Gx > 0.0) s.character = LinearCharacter::Sink;
        else if (Gx < 0.0) s.character = LinearCharacter::Source;
        else throw std::domain_error("linearize: rho_+ degenerate (G = 0)");
    }
    return s;
}

double OrbitSolution::rho_second(double rho_v, double rho_p) const {
    const FG fg{params.mu, params.a, params.g, params.A};
    return fg.F(rho_v) - rho_p * fg.G(rho_v);
}

std::size_t OrbitSolution::cell(double time) const {
    if (time <= t.front()) return 0;
    if (time >= t.back()) return t.size() - 2;
    const auto k = static_cast<std::size_t>((time - t.front()) / dt);
    return std::min(k, t.size() - 2);
}

double OrbitSolution::rho_at(double time) const {
    const std::size_t k = cell(time);
    return hermite(time, t[k], t[k + 1], rho[k], rho[k + 1], rho_prime[k], rho_prime[k + 1]);
}

double OrbitSolution::rho_prime_at(double time) const {
    const std::size_t k = cell(time);
    const double d0 = rho_second(rho[k], rho_prime[k]);
    const double d1 = rho_second(rho[k + 1], rho_prime[k + 1]);
    return hermite(time, t[k], t[k + 1], rho_prime[k], rho_prime[k + 1], d0, d1);
}

OrbitSolution shoot_heteroclinic(const PhysParams& params, const Landscape& landscape,
                                 const ShootOpts& opts) {
    const Region region = landscape.region();
    if (region == Region::Excluded)
        throw std::domain_error("shoot_heteroclinic: (g, A) lies in the excluded region");
    const int iota = region == Region::C1 ? +1 : -1;

    const Equilibria eq = landscape.eq();
    const FG fg{params.mu, params.a, params.g, params.A};
    // For the surging branch integrate the time-reversed field; the stable
    // direction of the original field seeds its unstable manifold.
    const double sgn = iota > 0 ? 1.0 : -1.0;
    auto field = [&](const Vec2& x) -> Vec2 {
        return {sgn * x.y, sgn * (fg.F(x.x) - x.y * fg.G(x.x))};
    };

    const EquilibriumSpectrum sp = linearize(EquilibriumPoint::RhoMinus, params);
    Vec2 dir = iota > 0 ? sp.tangent_unstable : sp.tangent_stable;
    dir = dir * (1.0 / dir.norm()); // positive rho-component: first step enters int R
    const Vec2 seed = Vec2{eq.rho_minus, 0.0} + opts.seed_offset * dir;
    const Vec2 sink{eq.rho_plus, 0.0};

    Dopri5Options iopt;
    iopt.rtol = opts.rtol;
    iopt.atol = opts.atol;
    iopt.h_max = opts.h_max;
    iopt.h_init = std::min(1e-4, opts.h_max);

    std::vector<Dopri5Step> steps;
    steps.reserve(4096);
    auto observer = [&](const Dopri5Step& st, const Vec2&) { steps.push_back(st); };
    auto stop = [&](double, const Vec2& y) { return (y - sink).norm() < opts.terminal_tol; };

    const auto [t_fin, y_fin] =
        dopri5_integrate(field, 0.0, seed, opts.max_time, iopt, observer, stop);
    if ((y_fin - sink).norm() >= opts.terminal_tol)
        throw std::runtime_error(
            "shoot_heteroclinic: slow convergence; final state (" + std::to_string(y_fin.x)
            + ", " + std::to_string(y_fin.y) + ") at t = " + std::to_string(t_fin));

    // Strictly uniform dense resampling in the integration frame; finite
    // difference consumers downstream assume one spacing everywhere. The
    // automatic step resolves the saddle rates (4th-order stencil errors
    // scale as (lambda dt)^4).
    const double lam_fast =
        std::max(std::fabs(sp.lambda_minus.real()), std::fabs(sp.lambda_plus.real()));
    const double dt = opts.sample_dt > 0.0
                          ? opts.sample_dt
                          : std::clamp(0.01 / lam_fast, 1e-3, 0.02);
    const std::size_t n = static_cast<std::size_t>(std::floor(t_fin / dt));
    std::vector<double> ts(n + 1), rs(n + 1), ps(n + 1);
    {
        std::size_t si = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double tk = static_cast<double>(k) * dt;
            while (si + 1 < steps.size() && steps[si].t0 + steps[si].h < tk) ++si;
            const Vec2 v = k == 0 ? seed : steps[si].eval(tk);
            ts[k] = tk;
            rs[k] = v.x;
            ps[k] = v.y;
        }
    }

    // Anchor: first mid-height crossing scanning from the hyperbolic end
    // (ascending in the integration frame) moves to t=0. In this frame
    // d(rho)/dt = sgn * ps.
    const double mid = 0.5 * (eq.rho_minus + eq.rho_plus);
    double t_anchor = 0.0;
    bool found = false;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        if ((rs[k] - mid) * (rs[k + 1] - mid) <= 0.0 && rs[k] != rs[k + 1]) {
            auto f = [&](double tt) {
                return hermite(tt, ts[k], ts[k + 1], rs[k], rs[k + 1], sgn * ps[k],
                               sgn * ps[k + 1])
                     - mid;
            };
            t_anchor = brent(f, ts[k], ts[k + 1], 1e-14);
            found = true;
            break;
        }
    }
    if (!found)
        throw std::runtime_error("shoot_heteroclinic: no mid-height crossing found");
    for (auto& tv : ts) tv -= t_anchor;

    OrbitSolution orb{params,
                      iota,
                      {},
                      {},
                      {},
                      dt,
                      iota > 0 ? eq.rho_minus : eq.rho_plus,
                      iota > 0 ? eq.rho_plus : eq.rho_minus,
                      0.0,
                      0.0,
                      0.0,
                      (y_fin - sink).norm()};
    if (iota > 0) {
        orb.t = std::move(ts);
        orb.rho = std::move(rs);
        orb.rho_prime = std::move(ps);
    } else {
        // Undo the time reversal: t -> -t, reversed order. The stored second
        // component is the original-time rho' already: the reversed system
        // evolved (rho, q) by -Phi, so d(rho)/dtau = -q while the original
        // solution rho(t) = rho_tau(-t) has rho'(t) = q(-t).
        const std::size_t m = ts.size();
        orb.t.resize(m);
        orb.rho.resize(m);
        orb.rho_prime.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            orb.t[k] = -ts[m - 1 - k];
            orb.rho[k] = rs[m - 1 - k];
            orb.rho_prime[k] = ps[m - 1 - k];
        }
    }

    // Trapping-region monitor.
    double viol = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < orb.rho.size(); ++k) {
        const double r = orb.rho[k];
        const double rc = std::clamp(r, eq.rho_minus, landscape.rho_star());
        viol = std::max(viol, eq.rho_minus - r);
        viol = std::max(viol, r - landscape.rho_star());
        viol = std::max(viol, std::fabs(orb.rho_prime[k]) - landscape.v_cap(rc));
    }
    orb.trap_violation = std::max(viol, 0.0);
    if (orb.trap_violation > 1e-4)
        throw std::runtime_error("shoot_heteroclinic: trapping breach");

    // Tail-decay fit of log|X - X_lim| on both ends. Near a spiral endpoint
    // the plain norm oscillates, so measure there in the eigenbasis, where
    // the linearized flow scales the norm by exp(Re(lambda) t) exactly.
    // head = hyperbolic (rho_-) end, tail = sink/source (rho_+) end.
    const EquilibriumSpectrum sink_sp = linearize(EquilibriumPoint::RhoPlus, params);
    auto collect = [&](double rlim, bool eigennorm) {
        std::vector<double> tt, dd;
        const double al = sink_sp.lambda_plus.real();
        const double be = sink_sp.lambda_plus.imag();
        for (std::size_t k = 0; k < orb.rho.size(); ++k) {
            const double v1 = orb.rho[k] - rlim;
            const double v2 = orb.rho_prime[k];
            const double d = eigennorm && be != 0.0
                                 ? std::hypot(v1, (v2 - al * v1) / be)
                                 : std::hypot(v1, v2);
            if (d > 1e-7 && d < 1e-3) {
                tt.push_back(orb.t[k]);
                dd.push_back(std::log(d));
            }
        }
        return std::pair(tt, dd);
    };
    auto [t_head, d_head] = collect(eq.rho_minus, false);
    auto [t_tail, d_tail] = collect(eq.rho_plus, !sink_sp.real_eigenvalues);
    const LinFit head_fit =
        t_head.size() >= 3 ? linear_fit(t_head, d_head, t_head.size()) : LinFit{};
    const LinFit tail_fit =
        t_tail.size() >= 3 ? linear_fit(t_tail, d_tail, t_tail.size()) : LinFit{};
    orb.decay_rate = std::min(std::fabs(head_fit.slope), std::fabs(tail_fit.slope));
    orb.decay_r2 = std::min(head_fit.r2, tail_fit.r2);

    return orb;
}

EnergyAuditReport energy_audit(const OrbitSolution& orbit, const Landscape& landscape) {
    const std::size_t n = orbit.t.size();
    std::vector<double> E(n), f(n), fp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = orbit.rho[k], q = orbit.rho_prime[k];
        E[k] = 0.5 * q * q + landscape.V(r);
        // integrand G rho'^2 and its exact t-derivative on trajectories
        const double G = landscape.G(r);
        const double rpp = landscape.F(r) - q * G;
        f[k] = G * q * q;
        fp[k] = landscape.dG(r) * q * q * q + 2.0 * G * q * rpp;
    }

    double S = 0.0, Sabs = 0.0, worst = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double h = orbit.t[k] - orbit.t[k - 1];
        // derivative-corrected trapezoid, O(h^4) per cell
        S += 0.5 * h * (f[k - 1] + f[k]) + h * h / 12.0 * (fp[k - 1] - fp[k]);
        Sabs += 0.5 * h * (std::fabs(f[k - 1]) + std::fabs(f[k]));
        worst = std::max(worst, std::fabs(E[k] - E[0] + S));
    }
    EnergyAuditReport rep;
    rep.relative_defect = Sabs > 1e-300 ? worst / Sabs : 0.0;
    rep.e_start = E.front();
    rep.e_end = E.back();
    return rep;
}

} // namespace boreforge
