#pragma once

// Leading-order two-dimensional bore fields on the flattened strip: free
// surface, velocity, pressure, plus streamline/vorticity post-processing.
// Grids are tensor-product in (x, s) with s = y/eps in [0,1]; the physical
// domain is reached through the flattening map (x, y) -> (x, y*zeta(x)).

#include <cstddef>
#include <string>
#include <vector>

#include "boreforge/shallow_profile.hpp"

namespace boreforge {

enum class Frame { Lab, Traveling };

struct GridSpec {
    std::size_t nx = 257;
    std::size_t ny = 65;
    double x_min = 0.0;
    double x_max = 0.0;    // x_min == x_max: use the profile's full range
    Frame frame = Frame::Lab;
    bool include_correction = true; // false drops the second-order velocity terms
};

// Node samples are held in extended precision so finite-difference residual
// probes measure discretization error rather than the rounding floor of the
// stencils (thin-strip 1/eps^2 amplification).
struct FieldGrid {
    std::vector<double> x;  // nx, uniform
    std::vector<double> s;  // ny, uniform in [0,1]; physical y = eps*s
    double eps = 0.0;
    double gamma_bar = 0.0;

    // Orientation-carrying constants of the system this grid is data for:
    // speed_c = 4 + eps^2 gamma_bar, drive = 4a, flux_rhs = A + eps^2 Abar.
    // An x-reflection flips all three signs.
    double speed_c = 0.0;
    double drive = 0.0;
    double flux_rhs = 0.0;

    Frame frame = Frame::Lab;

    std::vector<long double> zeta;             // nx
    std::vector<long double> u1, u2, p;        // nx*ny, row-major ix*ny+iy

    std::size_t nx() const { return x.size(); }
    std::size_t ny() const { return s.size(); }
    std::size_t idx(std::size_t ix, std::size_t iy) const { return ix * ny() + iy; }
    double hx() const { return x[1] - x[0]; }
    double hs() const { return s[1] - s[0]; }
};

// Flattening geometry derived from the grid's surface row: zeta derivatives,
// outward normal (-eps*zeta', 1), and mean curvature of eps*zeta.
struct GeometryOps {
    std::vector<long double> zeta, dzeta, ddzeta; // per-x, FD from the grid
    double eps = 0.0;

    long double normal_x(std::size_t ix) const { return -eps * dzeta[ix]; }
    long double mean_curvature(std::size_t ix) const;
};

GeometryOps geometry_ops(const FieldGrid& grid);

FieldGrid reconstruct(const ShallowProfile& profile, const PhysParams& params,
                      const GridSpec& spec);

// x-reflection x -> -x with the velocity/forcing sign conventions adjusted;
// maps the data of one chirality onto the reversed problem.
FieldGrid reflect_x(const FieldGrid& grid);

// Sup over interior nodes of the flattened divergence by 4th-order stencils.
double divergence_check(const FieldGrid& grid, const GeometryOps& geom);

struct StreamlineData {
    // polylines in physical coordinates (x, z)
    std::vector<std::vector<std::pair<double, double>>> streamlines;
    std::vector<double> omega;      // nx*ny vorticity (physical-coordinate curl)
    std::vector<std::string> warnings;
};

struct StreamlineOpts {
    std::size_t seed_count = 12;
    double step = 0.05;
    std::size_t max_points = 20000;
};

// Requires a Traveling-frame grid; streamlines are those of the flow seen by
// an observer moving with the wave.
StreamlineData streamlines_and_vorticity(const FieldGrid& grid,
                                         const StreamlineOpts& opts = {});

// x-window of the orbit with the super-converged tails trimmed at the stated
// distance; residual evaluation windows come from here.
std::pair<double, double> residual_window(const OrbitSolution& orbit,
                                          double tail_cut = 1e-8);

} // namespace boreforge
