#include "powerlife/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace powerlife::svg {

namespace {

constexpr double kWidth = 860.0, kHeight = 420.0;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 50.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;

    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    [[nodiscard]] double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::ofstream open_svg(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot file '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

void draw_frame(std::ofstream& out, const std::string& title, const std::string& x_label,
                const std::string& y_label) {
    double x1 = kWidth - kRight, y1 = kHeight - kBottom;
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << y1 << "\" x2=\"" << x1 << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << y1
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (kLeft + x1) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (kTop + y1) / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
    Range xr{1e300, -1e300}, yr{1e300, -1e300};
    for (const auto& s : series) {
        for (double v : s.x) xr.expand(v);
        for (double v : s.y) yr.expand(v);
    }
    if (xr.lo > xr.hi) xr = {0.0, 1.0};
    if (yr.lo > yr.hi) yr = {0.0, 1.0};
    if (yr.hi == yr.lo) yr.hi = yr.lo + 1.0;

    double px1 = kWidth - kRight, py1 = kHeight - kBottom;
    auto X = [&](double v) { return kLeft + (v - xr.lo) / xr.span() * (px1 - kLeft); };
    auto Y = [&](double v) { return py1 - (v - yr.lo) / yr.span() * (py1 - kTop); };

    auto out = open_svg(path);
    draw_frame(out, title, x_label, y_label);

    for (int i = 0; i <= 4; ++i) {
        double fx = xr.lo + xr.span() * i / 4.0;
        double fy = yr.lo + yr.span() * i / 4.0;
        out << "<text x=\"" << X(fx) << "\" y=\"" << py1 + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(fx)
            << "</text>\n"
            << "<text x=\"" << kLeft - 6 << "\" y=\"" << Y(fy) + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(fy)
            << "</text>\n";
    }

    double legend_y = kTop + 4;
    for (const auto& s : series) {
        if (s.x.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
        // cap point count so traces stay lightweight
        std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
        for (std::size_t i = 0; i < s.x.size(); i += stride)
            out << fmt(X(s.x[i])) << "," << fmt(Y(s.y[i])) << " ";
        out << fmt(X(s.x.back())) << "," << fmt(Y(s.y.back()));
        out << "\"/>\n";
        out << "<rect x=\"" << px1 - 150 << "\" y=\"" << legend_y - 8
            << "\" width=\"14\" height=\"3\" fill=\"" << s.color << "\"/>\n"
            << "<text x=\"" << px1 - 132 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

void write_bar_chart(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<Bar>& bars) {
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};

    std::vector<std::string> groups;
    std::map<std::string, std::string> colors;
    double vmax = 0.0, vmin_pos = 1e300;
    for (const auto& b : bars) {
        if (std::find(groups.begin(), groups.end(), b.group) == groups.end())
            groups.push_back(b.group);
        if (!colors.count(b.label))
            colors[b.label] = kPalette[colors.size() % 4];
        vmax = std::max(vmax, b.value);
        if (b.value > 0.0) vmin_pos = std::min(vmin_pos, b.value);
    }
    bool log_axis = vmax > 0.0 && vmin_pos < 1e300 && vmax / vmin_pos > 1e3;
    double lo = log_axis ? std::floor(std::log10(vmin_pos)) : 0.0;
    double hi = log_axis ? std::ceil(std::log10(vmax)) : (vmax > 0.0 ? vmax * 1.05 : 1.0);
    if (log_axis && hi <= lo) hi = lo + 1.0;

    double px1 = kWidth - kRight, py1 = kHeight - kBottom;
    auto Y = [&](double v) {
        if (log_axis) {
            if (v <= 0.0) return py1;
            double f = (std::log10(v) - lo) / (hi - lo);
            return py1 - std::clamp(f, 0.0, 1.0) * (py1 - kTop);
        }
        return py1 - std::clamp(v / hi, 0.0, 1.0) * (py1 - kTop);
    };

    auto out = open_svg(path);
    draw_frame(out, title, "", y_label);

    int ticks = log_axis ? static_cast<int>(hi - lo) : 4;
    for (int i = 0; i <= ticks; ++i) {
        double v = log_axis ? std::pow(10.0, lo + i) : hi * i / ticks;
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << Y(v) + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << (log_axis ? ("1e" + fmt(lo + i)) : fmt(v)) << "</text>\n";
    }

    double group_w = (px1 - kLeft) / std::max<std::size_t>(1, groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        double gx = kLeft + group_w * static_cast<double>(g);
        std::vector<const Bar*> in_group;
        for (const auto& b : bars)
            if (b.group == groups[g]) in_group.push_back(&b);
        double bar_w = group_w * 0.7 / std::max<std::size_t>(1, in_group.size());
        for (std::size_t i = 0; i < in_group.size(); ++i) {
            double x = gx + group_w * 0.15 + bar_w * static_cast<double>(i);
            double y = Y(in_group[i]->value);
            out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(bar_w * 0.9)
                << "\" height=\"" << fmt(py1 - y) << "\" fill=\"" << colors[in_group[i]->label]
                << "\"/>\n";
        }
        out << "<text x=\"" << gx + group_w / 2 << "\" y=\"" << py1 + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << groups[g]
            << "</text>\n";
    }

    double legend_y = kTop + 4;
    for (const auto& [label, color] : colors) {
        out << "<rect x=\"" << px1 - 150 << "\" y=\"" << legend_y - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << px1 - 134 << "\" y=\"" << legend_y + 1
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace powerlife::svg
