#pragma once

// Minimal static SVG line/scatter plots, fixed 800x500 viewport.

#include <ostream>
#include <string>
#include <vector>

namespace fdml::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool scatter = false;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<double> vertical_markers;  ///< dashed vertical lines at these x values
};

void write(std::ostream& os, const Plot& plot);

}  // namespace fdml::svg
