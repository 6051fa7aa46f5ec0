#pragma once

#include <string>

#include "mfgcast/grid.hpp"

namespace mfgcast {

// Solution in blue against data in red over [-1, 1].
std::string svg_week_comparison(const Slice& m_sol, const Slice& m_data, const Grid& g,
                                const std::string& title);

// Single curve over the time axis on a log-friendly linear scale.
std::string svg_curve(const Slice& values, const Grid& g, const std::string& title);

// Tiled heatmap of a nonnegative matrix, white at zero. Values at or
// above `cap` share the darkest tile.
std::string svg_heatmap(const Field& values, const Grid& g, const std::string& title,
                        double cap = 0.5);

}  // namespace mfgcast
