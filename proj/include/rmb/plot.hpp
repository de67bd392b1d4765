// plot.hpp - static SVG emission for intensity traces. Deterministic byte
// output for identical inputs.

#pragma once

#include <string>
#include <vector>

namespace rmb {

enum class PlotStyle { linear, log_intensity };

struct PlotTrace {
    std::string label;
    std::vector<double> tau;        // s
    std::vector<double> intensity;  // W/m^2
};

/// Renders one or more traces (legend shown when more than one). For
/// log_intensity, values below log_floor are clamped to it and the plot is
/// annotated with the floor.
std::string render_plot(const std::vector<PlotTrace>& traces, PlotStyle style,
                        const std::string& title, double log_floor = 1e-30);

}  // namespace rmb
