#pragma once

// Phase-plane landscape of the height ODE in log variables: the restoring
// force F, the damping G, the potential V with its equipotential point
// rho_star, the damping root rho_zero, region classification, and the
// trapping region.

#include <optional>
#include <vector>

#include "boreforge/params.hpp"

namespace boreforge {

enum class Region { C1, Cminus1, Excluded };
enum class Chirality { Ebbing = +1, Surging = -1, Excluded = 0 };

struct RegionBoundaries {
    double g_c1;  // region C1 is g < g_c1
    double g_cm1; // region Cminus1 is g > g_cm1
};

struct ClassifyResult {
    Region region;
    RegionBoundaries boundaries;
};

class Landscape {
public:
    explicit Landscape(const PhysParams& params);

    const PhysParams& params() const { return params_; }
    const Equilibria& eq() const { return eq_; }
    double rho_star() const { return rho_star_; }
    std::optional<double> rho_zero() const { return rho_zero_; }
    Chirality chirality() const { return chirality_; }
    Region region() const { return region_; }

    double F(double x) const;
    double G(double x) const;
    double V(double x) const;  // closed-form antiderivative, no quadrature
    double dF(double x) const; // F'
    double dG(double x) const; // G'

    // Maximal-velocity cap sqrt(-2V) on [rho_minus, rho_star]; the trapping
    // region is {rho_- <= x <= rho_*, |x'| <= v_cap(x)}.
    double v_cap(double x) const;

private:
    PhysParams params_;
    Equilibria eq_;
    double rho_star_;
    std::optional<double> rho_zero_;
    Region region_;
    Chirality chirality_;
};

// Equipotential point: the unique root of V above rho_plus, found by
// bracket-doubling plus Brent on the closed-form V.
double find_rho_star(const PhysParams& params);

// rho_star depends on A alone; this overload avoids building a PhysParams.
double find_rho_star_of_A(double A);

ClassifyResult classify(double g, double A);

struct BoundaryRow {
    double A;
    double g_c1;
    double g_cm1;
};

// Boundary curves g = A^2 exp(-3 rho_star(A)) and g = A^2 exp(-3 rho_-(A))
// for region-figure reproduction.
std::vector<BoundaryRow> region_boundary_curve(const std::vector<double>& A_samples);

} // namespace boreforge
