// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/authtest.hpp"
#include "aoapla/montecarlo.hpp"

#include <optional>
#include <string>

namespace aoapla::cli {

// Closed-form summary of a single operating point, with the scenario
// parameters echoed in presentation units (degrees, dB).
struct AnalyticPoint {
    int num_elements = 0;
    int snapshots = 0;
    int spoofer_antennas = 0;
    double theta_u_deg = 0.0;
    std::optional<double> angular_offset_deg;
    double phi_max_deg = 0.0;
    double snr_db = 0.0;
    double sigma2 = 0.0;
    double alpha = 0.0;
    auth::AnalyticReport report;
    // Detection probability averaged over random phase draws; present only
    // when the scenario carries a nonzero phase spread.
    std::optional<double> p_sd_phase_avg;
};

// Requires a spoofer in the scenario. offset_deg, when known from the
// configuration, is echoed verbatim instead of being reconstructed from
// radians.
AnalyticPoint make_analytic_point(const mc::Scenario& scenario, int phase_draws = 1000,
                                  std::optional<double> offset_deg = std::nullopt);

std::string render_analytic_text(const AnalyticPoint& point);
std::string render_analytic_json(const AnalyticPoint& point);

} // namespace aoapla::cli
