#pragma once

// Distinguished heteroclinic orbits of the height phase plane: linearization
// at the equilibria, unstable-manifold shooting with trapping-region
// monitoring, translation normalization, and exponential-tail diagnostics.

#include <complex>
#include <vector>

#include "boreforge/landscape.hpp"
#include "boreforge/num.hpp"
#include "boreforge/params.hpp"

namespace boreforge {

enum class EquilibriumPoint { RhoMinus, RhoPlus };
enum class LinearCharacter { Hyperbolic, Sink, Source };

struct EquilibriumSpectrum {
    EquilibriumPoint at;
    std::complex<double> lambda_minus;
    std::complex<double> lambda_plus;
    bool real_eigenvalues;
    Vec2 tangent_unstable; // (1, lambda_plus) when real
    Vec2 tangent_stable;   // (1, lambda_minus) when real
    LinearCharacter character;
};

EquilibriumSpectrum linearize(EquilibriumPoint at, const PhysParams& params);

struct ShootOpts {
    double seed_offset = 1e-8;  // distance of the seed from the hyperbolic point
    double terminal_tol = 1e-9; // phase-space distance to the sink at termination
    double max_time = 1e4;
    // Uniform resampling step for the stored orbit; 0 picks one from the
    // saddle rates so fast fronts stay resolved for downstream stencils.
    double sample_dt = 0.0;
    double rtol = 1e-12;
    double atol = 1e-14;
    double h_max = 0.5;
};

struct OrbitSolution {
    PhysParams params;
    int chirality; // +1 ebbing, -1 surging

    // Uniformly spaced samples; t is anchored so rho crosses the mid-height
    // (rho_- + rho_+)/2 at t = 0.
    std::vector<double> t;
    std::vector<double> rho;
    std::vector<double> rho_prime;
    double dt;

    double rho_limit_neg; // limit of rho as t -> -inf
    double rho_limit_pos; // limit of rho as t -> +inf
    double decay_rate;    // fitted tail rate, > 0
    double decay_r2;
    double trap_violation;
    double endpoint_error;

    double t_begin() const { return t.front(); }
    double t_end() const { return t.back(); }

    // Second derivative from the governing equation, exact on trajectories.
    double rho_second(double rho_v, double rho_p) const;

    // Hermite interpolation of (rho, rho') between stored samples.
    double rho_at(double time) const;
    double rho_prime_at(double time) const;

private:
    std::size_t cell(double time) const;
};

OrbitSolution shoot_heteroclinic(const PhysParams& params, const Landscape& landscape,
                                 const ShootOpts& opts = {});

struct EnergyAuditReport {
    double relative_defect; // max_k |dE_k + int G rho'^2| / int |G| rho'^2
    double e_start;
    double e_end;
};

EnergyAuditReport energy_audit(const OrbitSolution& orbit, const Landscape& landscape);

} // namespace boreforge
