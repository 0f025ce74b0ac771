// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/report.hpp"

#include "aoapla/angles.hpp"
#include "aoapla/sweep.hpp"
#include "aoapla/version.hpp"

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

namespace aoapla::cli {

AnalyticPoint make_analytic_point(const mc::Scenario& scenario, int phase_draws,
                                  std::optional<double> offset_deg) {
    scenario.validate();
    if (!scenario.spoofer)
        throw std::invalid_argument("analytic point requires a spoofer in the scenario");

    std::optional<double> phase_avg;
    if (scenario.phase_spread && scenario.phase_spread->phi_max > 0.0)
        phase_avg = phase_averaged_analytic_p_sd(scenario, phase_draws);
    return AnalyticPoint{
        .num_elements = scenario.geometry.num_elements,
        .snapshots = scenario.snapshots,
        .spoofer_antennas = scenario.spoofer->num_antennas(),
        .theta_u_deg = rad2deg(scenario.theta_u),
        .angular_offset_deg = offset_deg,
        .phi_max_deg = scenario.phase_spread ? rad2deg(scenario.phase_spread->phi_max) : 0.0,
        .snr_db = sigma2_to_snr_db(scenario.sigma2),
        .sigma2 = scenario.sigma2,
        .alpha = scenario.alpha,
        .report = auth::analytic_report(scenario.geometry, scenario.theta_u,
                                        *scenario.spoofer, scenario.sigma2,
                                        scenario.snapshots, scenario.alpha),
        .p_sd_phase_avg = phase_avg,
    };
}

namespace {

void line(std::string& out, const char* name, double value, const char* spec = "%.10g") {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-22s ", name);
    out += buf;
    std::snprintf(buf, sizeof buf, spec, value);
    out += buf;
    out += '\n';
}

} // namespace

std::string render_analytic_text(const AnalyticPoint& point) {
    const auth::AnalyticReport& r = point.report;
    std::string out;
    out += "scenario\n";
    line(out, "  elements", point.num_elements, "%.0f");
    line(out, "  snapshots", point.snapshots, "%.0f");
    line(out, "  snr_db", point.snr_db);
    line(out, "  sigma2", point.sigma2);
    line(out, "  theta_u_deg", point.theta_u_deg);
    line(out, "  spoofer_antennas", point.spoofer_antennas, "%.0f");
    if (point.angular_offset_deg)
        line(out, "  angular_offset_deg", *point.angular_offset_deg);
    line(out, "  phi_max_deg", point.phi_max_deg);
    line(out, "  alpha", point.alpha);
    out += "bounds\n";
    line(out, "  crb_k", r.crb_k, "%.12g");
    line(out, "  mcrb_k", r.mcrb_k, "%.12g");
    line(out, "  theta0_deg", rad2deg(r.theta0), "%.12g");
    line(out, "  delta_deg", rad2deg(r.delta), "%.12g");
    out += "test\n";
    line(out, "  tau", r.design.tau, "%.12g");
    line(out, "  p_fa", r.probs.p_fa, "%.12g");
    line(out, "  p_md", r.probs.p_md, "%.12g");
    line(out, "  p_sd", r.probs.p_sd, "%.12g");
    if (point.p_sd_phase_avg)
        line(out, "  p_sd_phase_avg", *point.p_sd_phase_avg, "%.12g");
    if (!r.pseudo.converged)
        out += "note: pseudo-true angle search did not converge\n";
    if (r.pseudo.multimodal)
        out += "note: surrogate objective has tied global optima\n";
    return out;
}

std::string render_analytic_json(const AnalyticPoint& point) {
    const auth::AnalyticReport& r = point.report;
    nlohmann::json j;
    j["version"] = version_string;
    j["scenario"]["elements"] = point.num_elements;
    j["scenario"]["snapshots"] = point.snapshots;
    j["scenario"]["snr_db"] = point.snr_db;
    j["scenario"]["sigma2"] = point.sigma2;
    j["scenario"]["theta_u_deg"] = point.theta_u_deg;
    j["scenario"]["spoofer_antennas"] = point.spoofer_antennas;
    if (point.angular_offset_deg)
        j["scenario"]["angular_offset_deg"] = *point.angular_offset_deg;
    j["scenario"]["phi_max_deg"] = point.phi_max_deg;
    j["scenario"]["alpha"] = point.alpha;
    j["bounds"]["crb_k"] = r.crb_k;
    j["bounds"]["mcrb_k"] = r.mcrb_k;
    j["bounds"]["theta0_deg"] = rad2deg(r.theta0);
    j["bounds"]["delta_deg"] = rad2deg(r.delta);
    j["test"]["tau"] = r.design.tau;
    j["test"]["p_fa"] = r.probs.p_fa;
    j["test"]["p_md"] = r.probs.p_md;
    j["test"]["p_sd"] = r.probs.p_sd;
    if (point.p_sd_phase_avg)
        j["test"]["p_sd_phase_avg"] = *point.p_sd_phase_avg;
    j["search"]["converged"] = r.pseudo.converged;
    j["search"]["multimodal"] = r.pseudo.multimodal;
    return j.dump(2) + "\n";
}

} // namespace aoapla::cli
