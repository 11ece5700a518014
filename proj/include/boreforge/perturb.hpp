#pragma once

// Numerical instantiation of the heteroclinic perturbation theory: Duhamel
// fixed points near the hyperbolic equilibrium, a Volterra-marched
// compact-perturbation solve near the attractor, gluing at a switch time,
// and measured Lipschitz dependence on the perturbation parameter.

#include <functional>
#include <vector>

#include "boreforge/num.hpp"
#include "boreforge/orbit.hpp"

namespace boreforge {

// Nonautonomous perturbation Psi1(lambda, t, x). Callbacks must be pure and
// reentrant; the lab measures smallness, it never assumes it.
using PerturbationFn = std::function<Vec2(double, double, const Vec2&)>;

struct PlanarField {
    std::function<Vec2(const Vec2&)> value;
    std::function<Mat2(const Vec2&)> jacobian;
};

PlanarField lienard_field(const PhysParams& params);

struct HyperbolicData {
    Vec2 x_h;
    Mat2 M;              // field Jacobian at x_h
    double lambda_s = 0; // stable eigenvalue, < 0
    double lambda_u = 0; // unstable eigenvalue, > 0
    Mat2 proj_s, proj_u; // spectral projections
    double K = 1.0;      // measured semigroup constant
    double alpha = 0.0;  // measured decay rate
};

// Spectral decomposition at a hyperbolic zero of the field, with the
// semigroup constants measured by sampling t in [0, 20].
HyperbolicData hyperbolic_data(const PlanarField& field, const Vec2& x_h);

struct FixedPointOpts {
    double window_per_alpha = 200.0; // window length = this / alpha
    std::size_t nodes = 40000;
    double grid_growth = 7.5;        // geometric clustering strength
    double tol = 1e-10;
    std::size_t max_iter = 400;
    double contraction_limit = 0.9;
    double switch_distance = 1e-3;   // base orbit within this of x_h for t <= T
    double seed_ball = 2e-3;         // admissible |x_u| / |y_init|
};

struct BranchTrajectory {
    std::vector<double> t;     // ascending
    std::vector<Vec2> value;   // deviation from x_h (hyperbolic) or from base (attractor)
    double contraction_ratio = 0.0;
    std::size_t iterations = 0;
};

// Bounded backward branch on [T - window, T]: iterates the Duhamel map with
// split forward/backward integrals against the stable/unstable projections,
// trapezoid quadrature on a geometric grid clustered at T.
BranchTrajectory hyperbolic_fixed_point(const HyperbolicData& data, const PlanarField& field,
                                        const PerturbationFn& psi1, double lambda, double T,
                                        const Vec2& x_u, const FixedPointOpts& opts = {});

// Forward perturbed branch on [T, T + window] about a given base solution of
// the unperturbed field converging to the attractor x_a.
BranchTrajectory attractor_fixed_point(const PlanarField& field, const Mat2& M_a,
                                       const Vec2& x_a,
                                       const std::function<Vec2(double)>& base,
                                       const PerturbationFn& psi1, double lambda, double T,
                                       const Vec2& y_init, const FixedPointOpts& opts = {});

struct PerturbedOrbit {
    double lambda = 0.0;
    double switch_time = 0.0;
    std::vector<double> t;        // merged grid, ascending, original time
    std::vector<Vec2> correction; // B(lambda)(t)
    std::vector<Vec2> base;       // base orbit sampled on the same grid
    double glue_mismatch = 0.0;
    double contraction_ratio = 0.0;
    std::size_t iterations = 0;

    double sup_norm() const;
};

struct PerturbedBoreResult {
    std::vector<PerturbedOrbit> orbits;
    double lipschitz_ratio = 0.0; // sup over pairs ||B(l)-B(l')||_sup / |l-l'|
    HyperbolicData hyperbolic;
};

// Full pipeline: switch-time selection, hyperbolic and attractor branches,
// gluing, one orbit per lambda, and the empirical Lipschitz ratio.
PerturbedBoreResult perturbed_bore(const OrbitSolution& orbit, const PerturbationFn& psi1,
                                   const std::vector<double>& lambda_set,
                                   const FixedPointOpts& opts = {});

// Built-in perturbation family: gaussian bump lambda*exp(-(t-t0)^2/w^2)*(0,1).
PerturbationFn gaussian_bump(double t0, double width);

} // namespace boreforge
