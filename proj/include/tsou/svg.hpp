#pragma once
// Minimal SVG line plots: axes, polylines and a legend.

#include <string>
#include <vector>

namespace tsou::svg {

struct Series {
    std::string label;
    std::string color;
    std::vector<double> y;
};

//! All series share the x values. Non-finite y values break the polyline.
std::string line_plot(const std::string& title, const std::vector<double>& x, const std::vector<Series>& series);

} // namespace tsou::svg
