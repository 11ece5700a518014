#pragma once

// SVG emitter for surface profile + streamlines + vorticity colormap.
// Plots are convenience output derived from the data files.

#include <string>

#include "boreforge/field.hpp"

namespace boreforge {

// Inline linear color scale from violet (largest |omega|) to red (smallest).
std::string field_svg(const FieldGrid& grid, const StreamlineData& data, int width = 960,
                      int height = 420);

} // namespace boreforge
