#pragma once

// Full shallow-water variable bundle (H, U, U1, U2, P, P1, P2) assembled from
// a heteroclinic orbit via closed forms, with verification of the
// one-dimensional systems it must satisfy.

#include <vector>

#include "boreforge/orbit.hpp"

namespace boreforge {

// Pointwise bundle values and the derivatives downstream consumers need.
// Derivatives above rho' come from the governing equation, not from
// differentiating interpolants: rho'' = F - G rho' and its t-derivative give
// exact recursions.
struct ProfileSample {
    double H, Hp;
    double U, Up, Upp, Uppp;
    double U1, U1p;
    double U2, U2p;
    double P, Pp;
    double P1;
    double P2;
};

class ShallowProfile {
public:
    ShallowProfile(OrbitSolution orbit, const PhysParams& params);

    const OrbitSolution& orbit() const { return orbit_; }
    const PhysParams& params() const { return params_; }

    double x_begin() const { return orbit_.t_begin(); }
    double x_end() const { return orbit_.t_end(); }

    ProfileSample at(double x) const;
    ProfileSample from_state(double rho, double rho_p) const;

    // Bundle limits at x -> -inf/+inf (closed forms at the end states).
    ProfileSample limit(bool upstream) const;

private:
    OrbitSolution orbit_;
    PhysParams params_;
    Equilibria eq_;
};

ShallowProfile build_profile(const OrbitSolution& orbit, const PhysParams& params);

struct ProfileVerification {
    double mass_sup;     // sup |(4 - U) H - A|, algebraically tiny
    double momentum_sup; // sup of the velocity-form momentum equation residual
    double limit_defect; // worst endpoint defect across the seven profiles
};

// Residuals of the height/velocity system evaluated with 4th-order finite
// differences of the sampled profiles; independent of the analytic
// derivative recursion above.
ProfileVerification verify_shallow_water(const ShallowProfile& profile);

struct LienardEquivalenceReport {
    double hform_sup; // sup | 4 mu A (H'/H)' - 4a(1 - H - A/4H) + (A^2/H^2 - gH) H' |
};

LienardEquivalenceReport verify_lienard_equivalence(const ShallowProfile& profile);

} // namespace boreforge
