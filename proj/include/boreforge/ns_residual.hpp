#pragma once

// Plugs reconstructed leading-order fields into the full flattened
// free-boundary Navier-Stokes system and reports per-equation residual norms
// and their empirical eps-scaling. The system is evaluated in flattened
// coordinates throughout with 4th-order stencils.

#include <string>
#include <vector>

#include "boreforge/field.hpp"
#include "boreforge/params.hpp"

namespace boreforge {

struct Norms {
    double l2 = 0.0;  // grid-weighted root mean square
    double sup = 0.0;
    double scale = 1.0;       // magnitude of the equation's constituent terms
    double l2_normalized = 0.0;
    double sup_normalized = 0.0;
};

struct ResidualReport {
    Norms momentum1;
    Norms momentum2;
    double divergence_sup = 0.0;
    Norms stress_bc1;
    Norms stress_bc2;
    Norms slip_bc;
    Norms flux_eq;
    double eps = 0.0;
    bool grid_converged = true;
    std::string note;
};

ResidualReport evaluate_residuals(const FieldGrid& grid, const GeometryOps& geom,
                                  const PhysParams& params);

// Same evaluation plus a half-resolution run; flags the report when the
// coarse/fine norms disagree by more than the stated factor (residual not
// grid-converged). Only usable for profile-backed grids.
ResidualReport evaluate_residuals_checked(const ShallowProfile& profile,
                                          const PhysParams& params, const GridSpec& spec);

// Constant-height exact shear solution (zeta = H, u1 = b(y), u2 = 0, p = gH)
// with b(y) = 4H + 4(a/mu) H^2 (eps y - y^2/2); the residual module's golden
// zero-residual input.
FieldGrid shear_flow_exact(const PhysParams& params, double H, std::size_t nx = 257,
                           std::size_t ny = 257, double x_half_span = 10.0);

struct EpsSweepRow {
    double eps;
    double momentum1_l2;
    double momentum2_l2;
    double stress1;
    double stress2;
    double slip;
    double flux;
    double fitted_order; // log2(r(eps)/r(eps/2)) against the previous row
};

// Residual norms across an eps list (orbit and profile are eps-independent;
// only reconstruction and evaluation see eps).
std::vector<EpsSweepRow> eps_sweep(const OrbitSolution& orbit,
                                   const PhysParams& base_params,
                                   const std::vector<double>& eps_values,
                                   std::size_t nx = 2049, std::size_t ny = 129);

// Residual of the plain (un-regularized) flux equation pushed through
// (1 - d^2/dx^2) numerically; agrees with the regularized residual to
// discretization error.
std::vector<double> plain_flux_through_helmholtz(const FieldGrid& grid,
                                                 const GeometryOps& geom);
std::vector<double> regularized_flux_residual(const FieldGrid& grid,
                                              const GeometryOps& geom);

} // namespace boreforge
