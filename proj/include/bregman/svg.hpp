#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bregman {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal polyline chart with axes, ticks and a legend. Series are drawn in
/// order, so putting the reference curve last keeps it visually on top.
void write_svg(const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<PlotSeries>& series);

}  // namespace bregman
