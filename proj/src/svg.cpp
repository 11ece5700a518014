#include "boreforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace boreforge {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// violet (max magnitude) -> red (min magnitude), linear in value
std::string color_for(double v, double lo, double hi) {
    const double t = hi > lo ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
    // t = 0 -> violet (138,43,226), t = 1 -> red (220,30,30)
    const int r = static_cast<int>(138 + t * (220 - 138));
    const int g = static_cast<int>(43 + t * (30 - 43));
    const int b = static_cast<int>(226 + t * (30 - 226));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

} // namespace

std::string field_svg(const FieldGrid& grid, const StreamlineData& data, int width,
                      int height) {
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const double x0 = grid.x.front(), x1 = grid.x.back();
    double zmax = 0.0;
    for (long double z : grid.zeta) zmax = std::max(zmax, static_cast<double>(z));
    const double z1 = 1.15 * grid.eps * zmax;

    const double margin = 30.0;
    const double sx = (width - 2 * margin) / (x1 - x0);
    const double sy = (height - 2 * margin) / z1;
    auto px = [&](double x) { return margin + (x - x0) * sx; };
    auto py = [&](double z) { return height - margin - z * sy; };

    double wlo = 0.0, whi = 0.0;
    for (double w : data.omega) {
        wlo = std::min(wlo, w);
        whi = std::max(whi, w);
    }

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
                    + std::to_string(width) + "\" height=\"" + std::to_string(height)
                    + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // vorticity cells in physical coordinates
    for (std::size_t i = 0; i + 1 < nx; ++i) {
        const double za = grid.eps * static_cast<double>(grid.zeta[i]);
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            const double xl = px(grid.x[i]), xr = px(grid.x[i + 1]);
            const double zb = py(grid.s[j] * za), zt = py(grid.s[j + 1] * za);
            svg += "<rect x=\"" + fmt(xl) + "\" y=\"" + fmt(zt) + "\" width=\""
                 + fmt(xr - xl + 0.5) + "\" height=\"" + fmt(zb - zt + 0.5) + "\" fill=\""
                 + color_for(data.omega[i * ny + j], wlo, whi) + "\"/>\n";
        }
    }

    // streamlines
    for (const auto& line : data.streamlines) {
        svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.8\" points=\"";
        for (const auto& [x, z] : line) svg += fmt(px(x)) + "," + fmt(py(z)) + " ";
        svg += "\"/>\n";
    }

    // free surface
    svg += "<polyline fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < nx; ++i)
        svg += fmt(px(grid.x[i])) + ","
             + fmt(py(grid.eps * static_cast<double>(grid.zeta[i]))) + " ";
    svg += "\"/>\n</svg>\n";
    return svg;
}

} // namespace boreforge
