#pragma once

#include <string>
#include <vector>

namespace ranklab::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Tick {
    double position;
    std::string label;
};

struct LineChart {
    std::string title;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Tick> x_ticks;  // optional; auto numeric ticks when empty
    bool legend = true;
};

// Renders a line chart to SVG text. Output is a pure function of the input
// (fixed-precision coordinates, fixed palette), so identical charts are
// byte-identical.
std::string render_line_chart(const LineChart& chart, int width = 960, int height = 560);

}  // namespace ranklab::svg
