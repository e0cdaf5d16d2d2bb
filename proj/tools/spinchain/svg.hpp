#pragma once

#include <string>

#include "spinchain/figures.hpp"

namespace spinchain::cli {

/// Renders a line plot or heatmap as a standalone SVG document.
std::string render_svg(const PlotSpec& plot);

}  // namespace spinchain::cli
