#pragma once

// Nondimensional parameter bundle, equilibrium heights, tuning constants,
// Froude classification, and dimensional <-> nondimensional conversion.
// All values are immutable after construction and validated eagerly, so the
// numerical kernels downstream run assertion-free.

#include <limits>
#include <optional>
#include <string>

namespace boreforge {

// Endpoint guard for the flux parameter: sqrt(1-A) conditioning degrades at
// the open ends of (0,1), so construction clamps requests to this band.
inline constexpr double kFluxParamMin = 1e-9;
inline constexpr double kFluxParamMax = 1.0 - 1e-9;

struct PhysParams {
    double mu;    // nondim viscosity, > 0
    double a;     // nondim slip, > 0
    double g;     // nondim vertical gravity, >= 0
    double A;     // relative flux parameter, in (0,1)
    double sigma; // nondim surface tension, >= 0
    double eps;   // shallowness, in (0,1)

    PhysParams(double mu_, double a_, double g_, double A_, double sigma_, double eps_);
};

struct Equilibria {
    double h_minus;   // lower end-state height, in (0, 1/2)
    double h_plus;    // upper end-state height, in (1/2, 1)
    double rho_minus; // log h_minus
    double rho_plus;  // log h_plus
};

struct TunedConstants {
    double gamma_bar; // traveling-frame speed correction coefficient
    double A_bar;     // flux correction coefficient
    double A_hat;     // A + eps^2 * A_bar
};

// Plain reals with documented SI-style units; no unit-system machinery.
struct DimensionalParams {
    double mu;          // viscosity
    double kappa;       // horizontal gravitational acceleration
    double a;           // slip parameter (units of speed)
    double g;           // vertical gravitational acceleration
    double sigma;       // surface tension coefficient
    double gamma_speed; // traveling frame speed, > 0
};

struct FroudeResult {
    double value;       // sqrt(8/g); +inf when g == 0
    bool supercritical_limit; // true iff g == 0
};

// End-state heights H+- = (1 +- sqrt(1-A))/2 and their logs.
Equilibria equilibria(double A);

// Tuning constants making both end states eps-independent roots of the flux
// cubic (4 + e^2 gbar) H - 4 H^2 - e^2 (4a/3mu) H^3 = A_hat. Self-checks the
// cubic at both roots to 1e-12 relative and throws on failure.
TunedConstants tune(const PhysParams& p);

// Value of the flux cubic above at height h.
double flux_cubic(const PhysParams& p, const TunedConstants& t, double h);

FroudeResult froude(const PhysParams& p);

struct Dimensionalized {
    PhysParams params;
    double flux;            // relative velocity flux (dimensional), < 0
    int iota;               // +1 ebbing, -1 surging
    double length_scale;    // a * gamma / kappa
    double velocity_scale;  // gamma / 4
};

// Nondimensionalizes a dimensional bundle at shallowness eps and flux
// parameter A. Rejects the critical speed gamma = 2 g a / kappa (Fr = 1).
Dimensionalized dimensionalize(const DimensionalParams& dp, double A, double eps);

} // namespace boreforge
