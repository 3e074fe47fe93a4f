#pragma once
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cuer/errors.hpp"

namespace cuer {

/// One curve for the line chart. `band` (optional, same length as ys) draws a
/// shaded region ys[i] +/- band[i] behind the line.
struct SvgSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> band;
};

namespace svg_detail {

inline std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// Tick step rounded to 1, 2, or 5 times a power of ten.
inline double nice_step(double range, int target_ticks) {
    const double raw = range / std::max(target_ticks, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step = 10.0;
    if (norm <= 1.0) step = 1.0;
    else if (norm <= 2.0) step = 2.0;
    else if (norm <= 5.0) step = 5.0;
    return step * mag;
}

inline std::vector<double> ticks(double lo, double hi, int target) {
    std::vector<double> out;
    if (!(hi > lo)) return {lo};
    const double step = nice_step(hi - lo, target);
    double t = std::ceil(lo / step) * step;
    for (; t <= hi + step * 1e-9; t += step) out.push_back(t == 0.0 ? 0.0 : t);
    return out;
}

} // namespace svg_detail

/// Hand-built SVG line chart: labeled axes, light grid, one polyline per
/// series, optional shaded +/- band, legend in the right margin. Pure
/// function of its inputs, so output bytes are reproducible.
inline std::string svg_line_chart(const std::string& title, const std::string& x_label,
                                  const std::string& y_label,
                                  const std::vector<SvgSeries>& series) {
    using svg_detail::escape;
    using svg_detail::num;

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    const double width = 900, height = 540;
    const double px0 = 70, px1 = 720, py0 = 45, py1 = 495;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const SvgSeries& s : series) {
        if (s.xs.size() != s.ys.size()) {
            throw std::invalid_argument("svg_line_chart: xs/ys size mismatch");
        }
        if (!s.band.empty() && s.band.size() != s.ys.size()) {
            throw std::invalid_argument("svg_line_chart: band size mismatch");
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            const double b = s.band.empty() ? 0.0 : s.band[i];
            if (!any) {
                xmin = xmax = s.xs[i];
                ymin = s.ys[i] - b;
                ymax = s.ys[i] + b;
                any = true;
            } else {
                xmin = std::min(xmin, s.xs[i]);
                xmax = std::max(xmax, s.xs[i]);
                ymin = std::min(ymin, s.ys[i] - b);
                ymax = std::max(ymax, s.ys[i] + b);
            }
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    const double ypad = (ymax - ymin) * 0.05;
    ymin -= ypad > 0 ? ypad : 1;
    ymax += ypad > 0 ? ypad : 1;

    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) { return py1 - (y - ymin) / (ymax - ymin) * (py1 - py0); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, "%.0f") +
           "\" height=\"" + num(height, "%.0f") + "\" viewBox=\"0 0 " + num(width, "%.0f") +
           " " + num(height, "%.0f") + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"25\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + escape(title) + "</text>\n";

    for (double t : svg_detail::ticks(xmin, xmax, 6)) {
        const double x = sx(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(py1) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(py1 + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(t, "%.6g") + "</text>\n";
    }
    for (double t : svg_detail::ticks(ymin, ymax, 6)) {
        const double y = sy(t);
        out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px1) +
               "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + num(px0 - 8) + "\" y=\"" + num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               num(t, "%.6g") + "</text>\n";
    }

    out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(py1) + "\" x2=\"" + num(px1) +
           "\" y2=\"" + num(py1) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(px0) +
           "\" y2=\"" + num(py1) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num((px0 + px1) / 2) + "\" y=\"" + num(height - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + num((py0 + py1) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + num((py0 + py1) / 2) + ")\">" +
           escape(y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const SvgSeries& s = series[k];
        const char* color = kColors[k % 6];
        if (!s.band.empty() && s.xs.size() > 1) {
            std::string pts;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                pts += num(sx(s.xs[i])) + "," + num(sy(s.ys[i] + s.band[i])) + " ";
            }
            for (std::size_t i = s.xs.size(); i-- > 0;) {
                pts += num(sx(s.xs[i])) + "," + num(sy(s.ys[i] - s.band[i])) + " ";
            }
            out += "<polygon points=\"" + pts + "\" fill=\"" + color +
                   "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
        }
        if (!s.xs.empty()) {
            std::string pts;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                pts += num(sx(s.xs[i])) + "," + num(sy(s.ys[i])) + " ";
            }
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.8\"/>\n";
        }
        const double ly = py0 + 16 + 20 * static_cast<double>(k);
        out += "<line x1=\"" + num(px1 + 14) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
               num(px1 + 38) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2.5\"/>\n";
        out += "<text x=\"" + num(px1 + 44) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.name) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace cuer
