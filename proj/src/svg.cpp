#include "bregman/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace bregman {

namespace {

const char* kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                          "#ff7f0e", "#1f77b4"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_svg(const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label,
               const std::vector<PlotSeries>& series) {
    constexpr double W = 800, H = 500;
    constexpr double L = 70, R = 180, T = 40, B = 55;  // margins; legend on the right

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin < xmax)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymin < ymax)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xspan = xmax - xmin, yspan = ymax - ymin;

    auto px = [&](double x) { return L + (x - xmin) / xspan * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / yspan * (H - T - B); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << L << "\" y1=\"" << (H - B) << "\" x2=\"" << (W - R)
        << "\" y2=\"" << (H - B) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << (H - B)
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + xspan * k / 5.0;
        const double yv = ymin + yspan * k / 5.0;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << (H - B) << "\" x2=\"" << px(xv)
            << "\" y2=\"" << (H - B + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << (H - B + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(xv) << "</text>\n";
        out << "<line x1=\"" << (L - 5) << "\" y1=\"" << py(yv) << "\" x2=\"" << L
            << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << (L - 8) << "\" y=\"" << (py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(yv) << "</text>\n";
    }
    out << "<text x=\"" << (L + (W - L - R) / 2) << "\" y=\"" << (H - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (T + (H - T - B) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (T + (H - T - B) / 2) << ")\">" << y_label
        << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color =
            s + 1 == series.size() ? "#1f77b4" : kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
        const double width = s + 1 == series.size() ? 2.5 : 1.5;
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
            << "\" points=\"";
        for (auto [x, y] : series[s].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out << num(px(x)) << ',' << num(py(y)) << ' ';
        }
        out << "\"/>\n";
        const double ly = T + 18.0 * (s + 1);
        out << "<line x1=\"" << (W - R + 12) << "\" y1=\"" << ly << "\" x2=\"" << (W - R + 36)
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"" << width
            << "\"/>\n";
        out << "<text x=\"" << (W - R + 42) << "\" y=\"" << (ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace bregman
