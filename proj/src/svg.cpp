#include "fdml/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fdml::svg {

namespace {

constexpr double width = 800.0;
constexpr double height = 500.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 40.0;
constexpr double margin_bottom = 50.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo <= 0.0) {
            const double pad = std::abs(lo) > 0.0 ? 0.05 * std::abs(lo) : 0.5;
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

void write(std::ostream& os, const Plot& plot) {
    Range xr;
    Range yr;
    for (const auto& s : plot.series) {
        for (const double v : s.x) xr.include(v);
        for (const double v : s.y) yr.include(v);
    }
    for (const double v : plot.vertical_markers) xr.include(v);
    xr.finish();
    yr.finish();

    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;
    auto px = [&](double x) { return margin_left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return margin_top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    os << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    os << "<rect x=\"" << num(margin_left) << "\" y=\"" << num(margin_top) << "\" width=\"" << num(plot_w)
       << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"400\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" << escape(plot.title) << "</text>\n";
    os << "<text x=\"400\" y=\"490\" text-anchor=\"middle\" font-size=\"13\">" << escape(plot.x_label)
       << "</text>\n";
    os << "<text x=\"15\" y=\"250\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 250)\">"
       << escape(plot.y_label) << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(height - margin_bottom + 18)
           << "\" text-anchor=\"middle\" font-size=\"11\">" << label(fx) << "</text>\n";
        os << "<text x=\"" << num(margin_left - 6) << "\" y=\"" << num(py(fy) + 4)
           << "\" text-anchor=\"end\" font-size=\"11\">" << label(fy) << "</text>\n";
    }
    for (const double v : plot.vertical_markers) {
        os << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(margin_top) << "\" x2=\"" << num(px(v))
           << "\" y2=\"" << num(height - margin_bottom) << "\" stroke=\"blue\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (const auto& s : plot.series) {
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.scatter) {
            os << "<g fill=\"" << s.color << "\">\n";
            for (std::size_t i = 0; i < n; ++i) {
                os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"1.2\"/>\n";
            }
            os << "</g>\n";
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << (i + 1 < n ? " " : "");
            }
            os << "\"/>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace fdml::svg
