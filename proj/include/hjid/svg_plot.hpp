#pragma once

#include <string>
#include <vector>

namespace hjid {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label;
    int width = 800;
    int height = 500;
};

/// A self-contained SVG with axes, ticks, a legend and one polyline per series.
std::string render_svg(const std::vector<Series>& series, const PlotOptions& opts = {});

/// Series from a CSV table: the first column is x, every further column a series
/// labelled `<prefix>:<column>`.
std::vector<Series> series_from_csv_file(const std::string& path);

} // namespace hjid
