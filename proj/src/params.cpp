#include "boreforge/params.hpp"

#include <cmath>
#include <stdexcept>

namespace boreforge {

PhysParams::PhysParams(double mu_, double a_, double g_, double A_, double sigma_,
                       double eps_)
    : mu(mu_), a(a_), g(g_), A(A_), sigma(sigma_), eps(eps_) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::domain_error("PhysParams: mu must be > 0");
    if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("PhysParams: a must be > 0");
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::domain_error("PhysParams: g must be >= 0");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw std::domain_error("PhysParams: sigma must be >= 0");
    if (!(A >= kFluxParamMin && A <= kFluxParamMax))
        throw std::domain_error("PhysParams: A must lie in [1e-9, 1-1e-9]");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("PhysParams: eps must lie in (0,1)");
}

Equilibria equilibria(double A) {
    // open interval: A = 0 or 1 collapses the two states
    if (!(A > 0.0 && A < 1.0))
        throw std::domain_error("equilibria: A must lie in (0,1)");
    const double s = std::sqrt(1.0 - A);
    Equilibria eq;
    eq.h_minus = (1.0 - s) / 2.0;
    eq.h_plus = (1.0 + s) / 2.0;
    eq.rho_minus = std::log(eq.h_minus);
    eq.rho_plus = std::log(eq.h_plus);
    return eq;
}

double flux_cubic(const PhysParams& p, const TunedConstants& t, double h) {
    const double e2 = p.eps * p.eps;
    return (4.0 + e2 * t.gamma_bar) * h - 4.0 * h * h
         - e2 * (4.0 * p.a / (3.0 * p.mu)) * h * h * h;
}

TunedConstants tune(const PhysParams& p) {
    const Equilibria eq = equilibria(p.A);
    const double hp = eq.h_plus, hm = eq.h_minus;
    const double c = 4.0 * p.a / (3.0 * p.mu);
    TunedConstants t;
    t.gamma_bar = c * (hp * hp + hp * hm + hm * hm);
    t.A_bar = c * (hp * hp * hm + hp * hm * hm);
    t.A_hat = p.A + p.eps * p.eps * t.A_bar;

    // Both end states must solve the cubic; anything else is a construction bug.
    const double scale = std::max(1.0, std::fabs(t.A_hat));
    if (std::fabs(flux_cubic(p, t, hp) - t.A_hat) > 1e-12 * scale ||
        std::fabs(flux_cubic(p, t, hm) - t.A_hat) > 1e-12 * scale)
        throw std::runtime_error("tune: end states fail the flux cubic self-check");
    return t;
}

FroudeResult froude(const PhysParams& p) {
    if (p.g == 0.0)
        return {std::numeric_limits<double>::infinity(), true};
    return {std::sqrt(8.0 / p.g), false};
}

Dimensionalized dimensionalize(const DimensionalParams& dp, double A, double eps) {
    if (!(dp.mu > 0.0)) throw std::domain_error("dimensionalize: mu must be > 0");
    if (!(dp.kappa > 0.0)) throw std::domain_error("dimensionalize: kappa must be > 0");
    if (!(dp.a > 0.0)) throw std::domain_error("dimensionalize: a must be > 0");
    if (!(dp.g >= 0.0)) throw std::domain_error("dimensionalize: g must be >= 0");
    if (!(dp.sigma >= 0.0)) throw std::domain_error("dimensionalize: sigma must be >= 0");
    if (!(dp.gamma_speed > 0.0)) throw std::domain_error("dimensionalize: gamma must be > 0");

    const double gam = dp.gamma_speed;
    const double crit = 2.0 * dp.g * dp.a / dp.kappa;
    if (gam == crit)
        throw std::domain_error(
            "dimensionalize: gamma = 2*g*a/kappa excluded (Fr = 1 excluded)");

    const double mu_nd = 4.0 * dp.kappa * dp.mu / (dp.a * gam * gam);
    const double a_nd = 4.0 * dp.a / gam;
    const double g_nd = 16.0 * dp.g * dp.a / (dp.kappa * gam);
    const double sigma_nd = 16.0 * dp.sigma / (gam * gam);

    Dimensionalized out{
        PhysParams(mu_nd, a_nd, g_nd, A, sigma_nd, eps),
        0.0,
        gam > crit ? +1 : -1,
        dp.a * gam / dp.kappa,
        gam / 4.0,
    };

    const Equilibria eq = equilibria(A);
    const double hp = eq.h_plus, hm = eq.h_minus;
    out.flux = -eps * (dp.a * gam * gam / (4.0 * dp.kappa)) * A
             - eps * eps * eps
                   * (dp.a * dp.a * dp.a * gam * gam * gam / (3.0 * dp.kappa * dp.kappa * dp.mu))
                   * (hp * hp * hm + hp * hm * hm);
    return out;
}

} // namespace boreforge
