#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fivebar {

/// One polyline of a chart.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Renders a standalone SVG polyline chart with axes, tick labels and a
/// legend. Deterministic output for identical inputs.
void write_svg_chart(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series);

/// Loads any of the toolkit's CSV schemas (first column as abscissa, the
/// rest as series) and renders it to `out_svg`.
void plot_csv(const std::filesystem::path& in_csv, const std::filesystem::path& out_svg);

} // namespace fivebar
