#include "boreforge/shallow_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace boreforge {

namespace {

// 4th-order central first derivative of a sampled array at interior index k.
double d4(const std::vector<double>& f, std::size_t k, double h) {
    return (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * h);
}

} // namespace

ShallowProfile::ShallowProfile(OrbitSolution orbit, const PhysParams& params)
    : orbit_(std::move(orbit)), params_(params), eq_(equilibria(params.A)) {
    if (orbit_.t.size() < 8)
        throw std::runtime_error("ShallowProfile: orbit too short to interpolate");
}

ShallowProfile build_profile(const OrbitSolution& orbit, const PhysParams& params) {
    return ShallowProfile(orbit, params);
}

ProfileSample ShallowProfile::from_state(double rho, double rho_p) const {
    const double mu = params_.mu, a = params_.a, g = params_.g, A = params_.A;
    const double H = std::exp(rho);
    const double em = A * std::exp(-rho); // A/H

    // rho derivatives from the governing equation
    const double F = (a / (mu * A)) * (1.0 - H - em / 4.0);
    const double G = (1.0 / (4.0 * mu)) * (em - (g / A) * H * H);
    const double dF = (a / (mu * A)) * (-H + em / 4.0);
    const double dG = -(1.0 / (4.0 * mu)) * (em + 2.0 * (g / A) * H * H);
    const double r2 = F - rho_p * G;                         // rho''
    const double r3 = dF * rho_p - dG * rho_p * rho_p - G * r2; // rho'''

    ProfileSample s;
    s.H = H;
    s.Hp = rho_p * H;
    s.U = 4.0 - em;
    s.Up = em * rho_p;
    s.Upp = em * (r2 - rho_p * rho_p);
    s.Uppp = em * (r3 - 3.0 * rho_p * r2 + rho_p * rho_p * rho_p);
    s.U1 = (a / mu) * s.U;
    s.U1p = (a / mu) * s.Up;
    s.P = g * H - 2.0 * mu * s.Up;
    s.Pp = g * s.Hp - 2.0 * mu * s.Upp;
    // P - gH - 2 mu U' = -4 mu U' for this bundle, so the U2 closed form
    // U2 = U'' - (mu U1 + (P - gH - 2 mu U') H') / (mu H) collapses to
    s.U2 = s.Upp - s.U1 / H + 4.0 * s.Up * rho_p;
    s.U2p = s.Uppp - s.U1p / H + s.U1 * rho_p / H + 4.0 * (s.Upp * rho_p + s.Up * r2);
    s.P1 = -mu * s.U1p;
    s.P2 = (s.U - 4.0) * s.Upp - s.Up * s.Up - mu * (s.Uppp + s.U2p);
    return s;
}

ProfileSample ShallowProfile::at(double x) const {
    return from_state(orbit_.rho_at(x), orbit_.rho_prime_at(x));
}

ProfileSample ShallowProfile::limit(bool upstream) const {
    const double rho = upstream ? orbit_.rho_limit_neg : orbit_.rho_limit_pos;
    return from_state(rho, 0.0);
}

ProfileVerification verify_shallow_water(const ShallowProfile& profile) {
    const OrbitSolution& orb = profile.orbit();
    const PhysParams& p = profile.params();
    const std::size_t n = orb.t.size();
    const double h = orb.dt;

    std::vector<double> H(n), U(n), HUp(n);
    for (std::size_t k = 0; k < n; ++k) {
        H[k] = std::exp(orb.rho[k]);
        U[k] = 4.0 - p.A / H[k];
    }

    ProfileVerification out{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k)
        out.mass_sup = std::max(out.mass_sup, std::fabs((4.0 - U[k]) * H[k] - p.A));

    // momentum: H(U-4)U' + aU - 4mu (HU')' + gHH' - 4aH, derivatives by FD
    std::vector<double> Up(n, 0.0);
    for (std::size_t k = 2; k + 2 < n; ++k) Up[k] = d4(U, k, h);
    for (std::size_t k = 2; k + 2 < n; ++k) HUp[k] = H[k] * Up[k];
    for (std::size_t k = 4; k + 4 < n; ++k) {
        const double HUp_p = d4(HUp, k, h);
        const double Hp = d4(H, k, h);
        const double r = H[k] * (U[k] - 4.0) * Up[k] + p.a * U[k] - 4.0 * p.mu * HUp_p
                       + p.g * H[k] * Hp - 4.0 * p.a * H[k];
        out.momentum_sup = std::max(out.momentum_sup, std::fabs(r));
    }

    // endpoint limits of the seven profiles
    for (bool upstream : {true, false}) {
        const ProfileSample lim = profile.limit(upstream);
        const double x = upstream ? profile.x_begin() : profile.x_end();
        const ProfileSample s = profile.at(x);
        double d = 0.0;
        d = std::max(d, std::fabs(s.H - lim.H));
        d = std::max(d, std::fabs(s.U - lim.U));
        d = std::max(d, std::fabs(s.U1 - lim.U1));
        d = std::max(d, std::fabs(s.U2 - lim.U2));
        d = std::max(d, std::fabs(s.P - lim.P));
        d = std::max(d, std::fabs(s.P1 - lim.P1));
        d = std::max(d, std::fabs(s.P2 - lim.P2));
        out.limit_defect = std::max(out.limit_defect, d);
    }
    return out;
}

LienardEquivalenceReport verify_lienard_equivalence(const ShallowProfile& profile) {
    const OrbitSolution& orb = profile.orbit();
    const PhysParams& p = profile.params();
    const std::size_t n = orb.t.size();
    const double h = orb.dt;

    std::vector<double> H(n), q(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) H[k] = std::exp(orb.rho[k]);
    for (std::size_t k = 2; k + 2 < n; ++k) q[k] = d4(H, k, h) / H[k];

    LienardEquivalenceReport rep{0.0};
    for (std::size_t k = 4; k + 4 < n; ++k) {
        const double qp = d4(q, k, h);
        const double Hp = d4(H, k, h);
        const double r = 4.0 * p.mu * p.A * qp
                       - 4.0 * p.a * (1.0 - H[k] - p.A / (4.0 * H[k]))
                       + (p.A * p.A / (H[k] * H[k]) - p.g * H[k]) * Hp;
        rep.hform_sup = std::max(rep.hform_sup, std::fabs(r));
    }
    return rep;
}

} // namespace boreforge
