#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "core/errors.hpp"

namespace ranklab::svg {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr int kPaletteSize = 10;

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1/2/5 tick spacing covering [lo, hi] with about `target` steps.
std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double raw_step = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw_step) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) {
        ticks.push_back(v == 0.0 ? 0.0 : v);  // normalize -0
    }
    return ticks;
}

}  // namespace

std::string render_line_chart(const LineChart& chart, int width, int height) {
    if (chart.series.empty()) throw DomainError("chart has no series");
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    double y_min = x_min;
    double y_max = x_max;
    for (const Series& s : chart.series) {
        if (s.x.size() != s.y.size()) throw DomainError("series x/y lengths differ");
        if (s.x.empty()) throw DomainError("chart series '" + s.label + "' is empty");
        for (double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (x_min == x_max) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_min == y_max) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    // Small vertical margin so extreme points do not sit on the frame.
    const double y_pad = (y_max - y_min) * 0.04;
    y_min -= y_pad;
    y_max += y_pad;

    const double ml = 72.0, mr = 24.0, mt = 44.0, mb = 48.0;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;
    auto sx = [&](double v) { return ml + (v - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double v) { return mt + (y_max - v) / (y_max - y_min) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + coord(width / 2.0) +
           "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">" +
           escape_text(chart.title) + "</text>\n";

    // Y grid, ticks, labels.
    for (double v : nice_ticks(y_min, y_max, 6)) {
        const double y = sy(v);
        out += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(y) + "\" x2=\"" +
               coord(width - mr) + "\" y2=\"" + coord(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + coord(ml - 8) + "\" y=\"" + coord(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               tick_label(v) + "</text>\n";
    }

    // X ticks: supplied (dates) or numeric.
    std::vector<Tick> x_ticks = chart.x_ticks;
    if (x_ticks.empty()) {
        for (double v : nice_ticks(x_min, x_max, 6)) x_ticks.push_back({v, tick_label(v)});
    }
    for (const Tick& tick : x_ticks) {
        if (tick.position < x_min || tick.position > x_max) continue;
        const double x = sx(tick.position);
        out += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(mt + ph) + "\" x2=\"" + coord(x) +
               "\" y2=\"" + coord(mt + ph + 5) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + coord(x) + "\" y=\"" + coord(mt + ph + 20) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               escape_text(tick.label) + "</text>\n";
    }

    // Frame and axis label.
    out += "<rect x=\"" + coord(ml) + "\" y=\"" + coord(mt) + "\" width=\"" + coord(pw) +
           "\" height=\"" + coord(ph) + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    if (!chart.y_label.empty()) {
        out += "<text x=\"16\" y=\"" + coord(mt + ph / 2.0) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
               coord(mt + ph / 2.0) + ")\">" + escape_text(chart.y_label) + "</text>\n";
    }

    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const Series& s = chart.series[si];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) points += ' ';
            points += coord(sx(s.x[i])) + "," + coord(sy(s.y[i]));
        }
        out += "<polyline fill=\"none\" stroke=\"";
        out += kPalette[si % kPaletteSize];
        out += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    }

    if (chart.legend && chart.series.size() <= 12) {
        const double lx = ml + 12.0;
        double ly = mt + 14.0;
        for (std::size_t si = 0; si < chart.series.size(); ++si) {
            out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly - 4) + "\" x2=\"" +
                   coord(lx + 22) + "\" y2=\"" + coord(ly - 4) + "\" stroke=\"";
            out += kPalette[si % kPaletteSize];
            out += "\" stroke-width=\"2\"/>\n";
            out += "<text x=\"" + coord(lx + 28) + "\" y=\"" + coord(ly) +
                   "\" font-family=\"sans-serif\" font-size=\"12\">" +
                   escape_text(chart.series[si].label) + "</text>\n";
            ly += 16.0;
        }
    }

    out += "</svg>\n";
    return out;
}

}  // namespace ranklab::svg
