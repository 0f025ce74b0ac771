// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/sweep.hpp"

#include <string>
#include <vector>

namespace aoapla::cli {

// One plotted series. Line series connect finite points; point series draw
// markers, with vertical whiskers where (y_low, y_high) are provided.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_low;   // empty or per-point
    std::vector<double> y_high;  // empty or per-point
    bool line = true;
};

struct SvgPlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    double y_min = 0.0;
    double y_max = 1.02;
};

std::string render_svg_plot(const SvgPlotSpec& spec, const std::vector<SvgSeries>& series);

// Detection-probability figure for one sweep's rows: analytic curves as
// lines, empirical estimates as whiskered points, one curve per distinct
// parameter tuple off the sweep axis. Falls back to false-alarm curves for
// sweeps without a spoofer.
std::string render_rows_svg(const std::vector<ResultRow>& rows, const std::string& title);

} // namespace aoapla::cli
