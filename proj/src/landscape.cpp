#include "boreforge/landscape.hpp"

#include <cmath>
#include <stdexcept>

#include "boreforge/num.hpp"

namespace boreforge {

namespace {

double eval_F(double x, double mu, double a, double A) {
    return (a / (mu * A)) * (1.0 - std::exp(x) - (A / 4.0) * std::exp(-x));
}

double eval_V(double x, double mu, double a, double A, const Equilibria& eq) {
    const double rm = eq.rho_minus, hm = eq.h_minus;
    return -(a / (mu * A))
           * ((x - rm) - (std::exp(x) - hm) + (A / 4.0) * (std::exp(-x) - 1.0 / hm));
}

double rho_star_impl(double mu, double a, double A) {
    const Equilibria eq = equilibria(A);
    auto V = [&](double x) { return eval_V(x, mu, a, A, eq); };
    // V(rho_+) < 0 and V -> +inf as x -> inf: double the span until a sign change.
    double lo = eq.rho_plus;
    double span = std::max(1e-4, 0.1 * (eq.rho_plus - eq.rho_minus));
    int doublings = 0;
    while (V(lo + span) <= 0.0) {
        span *= 2.0;
        if (++doublings > 64)
            throw std::runtime_error("find_rho_star: bracket expansion failed");
    }
    return brent(V, lo, lo + span, 1e-13, 1e-12);
}

} // namespace

double find_rho_star(const PhysParams& params) {
    return rho_star_impl(params.mu, params.a, params.A);
}

double find_rho_star_of_A(double A) { return rho_star_impl(1.0, 1.0, A); }

ClassifyResult classify(double g, double A) {
    if (!(g >= 0.0)) throw std::domain_error("classify: g must be >= 0");
    const Equilibria eq = equilibria(A);
    const double rs = find_rho_star_of_A(A);
    RegionBoundaries b{A * A * std::exp(-3.0 * rs), A * A * std::exp(-3.0 * eq.rho_minus)};
    // Points exactly on a boundary classify as Excluded; the sign conditions
    // in the existence theory are strict.
    Region r = Region::Excluded;
    if (g < b.g_c1) r = Region::C1;
    else if (g > b.g_cm1) r = Region::Cminus1;
    return {r, b};
}

std::vector<BoundaryRow> region_boundary_curve(const std::vector<double>& A_samples) {
    std::vector<BoundaryRow> rows;
    rows.reserve(A_samples.size());
    for (double A : A_samples) {
        const ClassifyResult c = classify(0.0, A);
        rows.push_back({A, c.boundaries.g_c1, c.boundaries.g_cm1});
    }
    return rows;
}

Landscape::Landscape(const PhysParams& params)
    : params_(params), eq_(equilibria(params.A)), rho_star_(find_rho_star(params)) {
    if (params_.g > 0.0)
        rho_zero_ = std::log(params_.A * params_.A / params_.g) / 3.0;
    const ClassifyResult c = classify(params_.g, params_.A);
    region_ = c.region;
    switch (region_) {
        case Region::C1: chirality_ = Chirality::Ebbing; break;
        case Region::Cminus1: chirality_ = Chirality::Surging; break;
        default: chirality_ = Chirality::Excluded; break;
    }
}

double Landscape::F(double x) const { return eval_F(x, params_.mu, params_.a, params_.A); }

double Landscape::G(double x) const {
    return (1.0 / (4.0 * params_.mu))
           * (params_.A * std::exp(-x) - (params_.g / params_.A) * std::exp(2.0 * x));
}

double Landscape::V(double x) const {
    return eval_V(x, params_.mu, params_.a, params_.A, eq_);
}

double Landscape::dF(double x) const {
    return (params_.a / (params_.mu * params_.A))
           * (-std::exp(x) + (params_.A / 4.0) * std::exp(-x));
}

double Landscape::dG(double x) const {
    return -(1.0 / (4.0 * params_.mu))
           * (params_.A * std::exp(-x) + 2.0 * (params_.g / params_.A) * std::exp(2.0 * x));
}

double Landscape::v_cap(double x) const {
    const double v2 = -2.0 * V(x);
    return v2 > 0.0 ? std::sqrt(v2) : 0.0;
}

} // namespace boreforge
