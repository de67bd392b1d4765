#include "rmb/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rmb {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

}  // namespace

std::string render_plot(const std::vector<PlotTrace>& traces, PlotStyle style,
                        const std::string& title, double log_floor) {
    if (traces.empty()) throw std::invalid_argument("render_plot: no traces");
    for (const auto& t : traces)
        if (t.tau.empty() || t.tau.size() != t.intensity.size())
            throw std::invalid_argument("render_plot: empty or ragged trace");

    const bool log_scale = style == PlotStyle::log_intensity;
    bool clamped = false;

    auto transform = [&](double intensity) {
        if (!log_scale) return intensity;
        if (intensity < log_floor) {
            clamped = true;
            intensity = log_floor;
        }
        return std::log10(intensity);
    };

    double x_min = traces[0].tau.front(), x_max = traces[0].tau.back();
    double y_min = 0.0, y_max = 0.0;
    bool first = true;
    for (const auto& t : traces) {
        x_min = std::min(x_min, t.tau.front());
        x_max = std::max(x_max, t.tau.back());
        for (double i : t.intensity) {
            const double y = transform(i);
            if (first) {
                y_min = y_max = y;
                first = false;
            }
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) {
        return kMarginLeft + plot_w * (x - x_min) / (x_max - x_min);
    };
    auto py = [&](double y) {
        return kMarginTop + plot_h * (1.0 - (y - y_min) / (y_max - y_min));
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int n_ticks = 6;
    for (int i = 0; i < n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / (n_ticks - 1);
        const double fy = y_min + (y_max - y_min) * i / (n_ticks - 1);
        svg << "<line x1=\"" << num(px(fx)) << "\" y1=\""
            << kHeight - kMarginBottom << "\" x2=\"" << num(px(fx)) << "\" y2=\""
            << kHeight - kMarginBottom + 6 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(px(fx)) << "\" y=\""
            << kHeight - kMarginBottom + 22
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << tick_label(fx) << "</text>\n";
        svg << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << num(py(fy))
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << num(py(fy))
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << tick_label(fy) << "</text>\n";
    }
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">retarded time tau (s)</text>\n";
    svg << "<text x=\"20\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 20 "
        << kHeight / 2 << ")\">"
        << (log_scale ? "log10 intensity (W/m^2)" : "intensity (W/m^2)")
        << "</text>\n";

    for (std::size_t t = 0; t < traces.size(); ++t) {
        const auto& trace = traces[t];
        svg << "<polyline fill=\"none\" stroke=\""
            << kColors[t % (sizeof(kColors) / sizeof(kColors[0]))]
            << "\" stroke-width=\"1.2\" points=\"";
        // cap the emitted point count; the polyline stays visually identical
        const std::size_t n = trace.tau.size();
        const std::size_t step = std::max<std::size_t>(1, n / 4000);
        for (std::size_t i = 0; i < n; i += step)
            svg << num(px(trace.tau[i])) << ',' << num(py(transform(trace.intensity[i])))
                << ' ';
        if ((n - 1) % step != 0)
            svg << num(px(trace.tau[n - 1])) << ','
                << num(py(transform(trace.intensity[n - 1])));
        svg << "\"/>\n";
    }

    if (traces.size() > 1) {
        for (std::size_t t = 0; t < traces.size(); ++t) {
            const double y = kMarginTop + 16 + 18.0 * t;
            svg << "<line x1=\"" << kMarginLeft + 12 << "\" y1=\"" << num(y)
                << "\" x2=\"" << kMarginLeft + 40 << "\" y2=\"" << num(y)
                << "\" stroke=\""
                << kColors[t % (sizeof(kColors) / sizeof(kColors[0]))]
                << "\" stroke-width=\"2\"/>\n"
                << "<text x=\"" << kMarginLeft + 46 << "\" y=\"" << num(y + 4)
                << "\" font-family=\"sans-serif\" font-size=\"12\">"
                << traces[t].label << "</text>\n";
        }
    }

    if (clamped) {
        svg << "<text x=\"" << kWidth - kMarginRight << "\" y=\""
            << kMarginTop - 8
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">values clamped at "
            << tick_label(log_floor) << " W/m^2</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace rmb
