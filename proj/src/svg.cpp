// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace aoapla::cli {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 76.0;
constexpr double kRight = 832.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 486.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#e377c2",
                          "#7f7f7f", "#bcbd22"};
constexpr int kPaletteSize = 10;

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

struct Axis {
    double lo;
    double hi;
    bool log_scale;

    double transform(double v) const { return log_scale ? std::log10(v) : v; }
    double to_unit(double v) const { return (transform(v) - lo) / (hi - lo); }
};

} // namespace

std::string render_svg_plot(const SvgPlotSpec& spec, const std::vector<SvgSeries>& series) {
    double x_min = 0.0;
    double x_max = 1.0;
    bool have_x = false;
    for (const SvgSeries& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg_plot: x and y lengths differ");
        if (!s.y_low.empty() && (s.y_low.size() != s.x.size() || s.y_high.size() != s.x.size()))
            throw std::invalid_argument("render_svg_plot: whisker lengths differ from x");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double v = s.x[i];
            if (!std::isfinite(v))
                continue;
            if (spec.log_x && !(v > 0.0))
                throw std::invalid_argument("render_svg_plot: log axis requires positive x");
            if (!std::isfinite(s.y[i]))
                continue;
            x_min = have_x ? std::min(x_min, v) : v;
            x_max = have_x ? std::max(x_max, v) : v;
            have_x = true;
        }
    }
    if (!have_x)
        throw std::invalid_argument("render_svg_plot: no finite points");

    Axis xaxis;
    xaxis.log_scale = spec.log_x;
    xaxis.lo = xaxis.transform(x_min);
    xaxis.hi = xaxis.transform(x_max);
    if (!(xaxis.hi > xaxis.lo)) {
        xaxis.lo -= 0.5;
        xaxis.hi += 0.5;
    }

    const double y_lo = spec.y_min;
    const double y_hi = spec.y_max;

    const auto px = [&](double v) { return kLeft + xaxis.to_unit(v) * (kRight - kLeft); };
    const auto py = [&](double v) {
        const double unit = (v - y_lo) / (y_hi - y_lo);
        return kBottom - std::clamp(unit, 0.0, 1.0) * (kBottom - kTop);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
           fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out += "<text x=\"" + fmt((kLeft + kRight) / 2) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(spec.title) + "</text>\n";

    // Ticks: decades on a log axis, six even divisions otherwise.
    std::vector<double> x_ticks;
    if (spec.log_x) {
        const int d0 = static_cast<int>(std::ceil(xaxis.lo - 1e-9));
        const int d1 = static_cast<int>(std::floor(xaxis.hi + 1e-9));
        for (int d = d0; d <= d1; ++d)
            x_ticks.push_back(std::pow(10.0, d));
    } else {
        for (int i = 0; i <= 5; ++i)
            x_ticks.push_back(xaxis.lo + (xaxis.hi - xaxis.lo) * i / 5.0);
    }
    for (double tick : x_ticks) {
        const double x = px(tick);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(kBottom) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               fmt(tick) + "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / 5.0;
        const double y = py(v);
        out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kRight) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + fmt(v) +
               "</text>\n";
    }
    out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
           fmt(kRight - kLeft) + "\" height=\"" + fmt(kBottom - kTop) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + fmt((kLeft + kRight) / 2) + "\" y=\"" + fmt(kBottom + 44) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           escape(spec.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + fmt((kTop + kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 20 " +
           fmt((kTop + kBottom) / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

    int color_index = 0;
    for (const SvgSeries& s : series) {
        const char* color = kPalette[color_index % kPaletteSize];
        ++color_index;
        if (s.line) {
            std::string d;
            bool open = false;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                    open = false;
                    continue;
                }
                d += open ? "L" : "M";
                d += fmt(px(s.x[i]), "%.2f");
                d += " ";
                d += fmt(py(s.y[i]), "%.2f");
                open = true;
            }
            out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.8\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                    continue;
                const double cx = px(s.x[i]);
                if (!s.y_low.empty() && std::isfinite(s.y_low[i]) && std::isfinite(s.y_high[i])) {
                    const double ylo = py(s.y_low[i]);
                    const double yhi = py(s.y_high[i]);
                    out += "<line x1=\"" + fmt(cx, "%.2f") + "\" y1=\"" + fmt(ylo, "%.2f") +
                           "\" x2=\"" + fmt(cx, "%.2f") + "\" y2=\"" + fmt(yhi, "%.2f") +
                           "\" stroke=\"" + color + "\"/>\n";
                    for (double yw : {ylo, yhi})
                        out += "<line x1=\"" + fmt(cx - 3.5, "%.2f") + "\" y1=\"" +
                               fmt(yw, "%.2f") + "\" x2=\"" + fmt(cx + 3.5, "%.2f") + "\" y2=\"" +
                               fmt(yw, "%.2f") + "\" stroke=\"" + color + "\"/>\n";
                }
                out += "<circle cx=\"" + fmt(cx, "%.2f") + "\" cy=\"" + fmt(py(s.y[i]), "%.2f") +
                       "\" r=\"3\" fill=\"" + color + "\"/>\n";
            }
        }
    }

    // Legend, bottom-right inside the frame.
    const double row_h = 17.0;
    const double box_h = row_h * static_cast<double>(series.size()) + 10.0;
    double box_w = 120.0;
    for (const SvgSeries& s : series)
        box_w = std::max(box_w, 46.0 + 7.2 * static_cast<double>(s.label.size()));
    const double bx = kRight - box_w - 10.0;
    const double by = kBottom - box_h - 10.0;
    out += "<rect x=\"" + fmt(bx) + "\" y=\"" + fmt(by) + "\" width=\"" + fmt(box_w) +
           "\" height=\"" + fmt(box_h) +
           "\" fill=\"#ffffff\" fill-opacity=\"0.9\" stroke=\"#999999\"/>\n";
    color_index = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[color_index % kPaletteSize];
        ++color_index;
        const double y = by + 14.0 + row_h * static_cast<double>(i);
        if (series[i].line) {
            out += "<line x1=\"" + fmt(bx + 8) + "\" y1=\"" + fmt(y - 4) + "\" x2=\"" +
                   fmt(bx + 34) + "\" y2=\"" + fmt(y - 4) + "\" stroke=\"" + color +
                   "\" stroke-width=\"1.8\"/>\n";
        } else {
            out += "<circle cx=\"" + fmt(bx + 21) + "\" cy=\"" + fmt(y - 4) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
        out += "<text x=\"" + fmt(bx + 40) + "\" y=\"" + fmt(y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(series[i].label) +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

namespace {

std::string curve_key(const ResultRow& row) {
    // Everything that can distinguish curves except the swept axis itself.
    std::string key;
    const auto add = [&](bool include, double v) {
        key += include ? fmt(v, "%.17g") : std::string("*");
        key += '|';
    };
    add(row.axis != SweepAxis::num_elements, row.num_elements);
    add(row.axis != SweepAxis::snapshots, row.snapshots);
    add(row.axis != SweepAxis::spoofer_antennas, row.spoofer_antennas);
    add(row.axis != SweepAxis::snr_db, row.snr_db);
    add(true, row.theta_u_deg);
    add(row.axis != SweepAxis::angular_offset_deg,
        row.angular_offset_deg ? *row.angular_offset_deg : -1e9);
    add(row.axis != SweepAxis::phi_max_deg, row.phi_max_deg);
    add(true, row.alpha);
    return key;
}

struct CurveGroup {
    std::vector<const ResultRow*> rows;
};

std::string axis_label(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::snr_db:
        return "SNR (dB)";
    case SweepAxis::num_elements:
        return "array elements M";
    case SweepAxis::snapshots:
        return "snapshots K";
    case SweepAxis::spoofer_antennas:
        return "spoofer antennas L";
    case SweepAxis::angular_offset_deg:
        return "angular offset (deg)";
    case SweepAxis::phi_max_deg:
        return "phase spread phi_max (deg)";
    }
    return "value";
}

} // namespace

std::string render_rows_svg(const std::vector<ResultRow>& rows, const std::string& title) {
    if (rows.empty())
        throw std::invalid_argument("render_rows_svg: no rows");
    const SweepAxis axis = rows.front().axis;

    std::vector<std::string> order;
    std::map<std::string, CurveGroup> groups;
    for (const ResultRow& row : rows) {
        const std::string key = curve_key(row);
        if (!groups.count(key))
            order.push_back(key);
        groups[key].rows.push_back(&row);
    }

    // Label by the parameters that actually differ between curves.
    bool vary_m = false, vary_k = false, vary_l = false, vary_snr = false, vary_off = false,
         vary_phi = false;
    const ResultRow& first = rows.front();
    for (const ResultRow& row : rows) {
        vary_m |= row.num_elements != first.num_elements;
        vary_k |= row.snapshots != first.snapshots;
        vary_l |= row.spoofer_antennas != first.spoofer_antennas;
        vary_snr |= row.snr_db != first.snr_db;
        vary_off |= (row.angular_offset_deg ? *row.angular_offset_deg : -1e9) !=
                    (first.angular_offset_deg ? *first.angular_offset_deg : -1e9);
        vary_phi |= row.phi_max_deg != first.phi_max_deg;
    }
    const auto group_label = [&](const ResultRow& row) {
        std::string label;
        const auto append = [&](const std::string& part) {
            if (!label.empty())
                label += " ";
            label += part;
        };
        if (vary_m && axis != SweepAxis::num_elements)
            append("M=" + fmt(row.num_elements));
        if (vary_k && axis != SweepAxis::snapshots)
            append("K=" + fmt(row.snapshots));
        if (vary_l && axis != SweepAxis::spoofer_antennas)
            append("L=" + fmt(row.spoofer_antennas));
        if (vary_snr && axis != SweepAxis::snr_db)
            append("SNR=" + fmt(row.snr_db) + "dB");
        if (vary_off && axis != SweepAxis::angular_offset_deg && row.angular_offset_deg)
            append("off=" + fmt(*row.angular_offset_deg) + "deg");
        if (vary_phi && axis != SweepAxis::phi_max_deg)
            append("phi=" + fmt(row.phi_max_deg) + "deg");
        return label;
    };

    std::vector<SvgSeries> series;
    for (const std::string& key : order) {
        const CurveGroup& group = groups[key];
        const ResultRow& head = *group.rows.front();
        const bool detection = head.p_sd.has_value();
        const std::string base_label = group_label(head);

        SvgSeries analytic;
        analytic.line = true;
        analytic.label = (detection ? "P_SD " : "P_FA ") + base_label;
        SvgSeries empirical;
        empirical.line = false;
        empirical.label = analytic.label + " (sim)";
        bool have_empirical = false;

        for (const ResultRow* row : group.rows) {
            analytic.x.push_back(row->axis_value);
            analytic.y.push_back(detection ? *row->p_sd : row->p_fa);
            const std::optional<mc::EmpiricalEstimate>& est =
                detection ? row->p_sd_emp : row->p_fa_emp;
            if (est) {
                empirical.x.push_back(row->axis_value);
                empirical.y.push_back(est->p_hat);
                empirical.y_low.push_back(est->ci_low);
                empirical.y_high.push_back(est->ci_high);
                have_empirical = true;
            }
        }
        series.push_back(std::move(analytic));
        if (have_empirical)
            series.push_back(std::move(empirical));
    }

    SvgPlotSpec spec;
    spec.title = title;
    spec.x_label = axis_label(axis);
    spec.y_label = "probability";
    spec.log_x = axis == SweepAxis::spoofer_antennas;
    return render_svg_plot(spec, series);
}

} // namespace aoapla::cli
