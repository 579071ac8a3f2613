#pragma once

// Minimal SVG chart writer for the pipeline's trace and bar plots.

#include <string>
#include <vector>

namespace powerlife::svg {

/// One named trace of a line chart.
struct Series {
    std::string label;
    std::string color;  ///< CSS color
    std::vector<double> x;
    std::vector<double> y;
};

/// Writes a line chart with axes, tick labels, and a legend.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

/// One bar of a grouped bar chart.
struct Bar {
    std::string group;  ///< x-axis group label
    std::string label;  ///< legend entry (bars with the same label share a color)
    double value = 0.0;
};

/// Writes a grouped bar chart on a logarithmic value axis when the spread
/// exceeds three decades, linear otherwise.
void write_bar_chart(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<Bar>& bars);

}  // namespace powerlife::svg
