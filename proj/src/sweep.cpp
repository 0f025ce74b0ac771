// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/sweep.hpp"

#include "aoapla/angles.hpp"
#include "aoapla/bounds.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

namespace aoapla::cli {

namespace {

int int_axis_value(double v, const char* axis_name) {
    const double r = std::round(v);
    if (!(std::abs(v - r) <= 1e-9) || !(std::abs(r) < 2147483647.0)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "sweep: %s values must be integers", axis_name);
        throw std::invalid_argument(msg);
    }
    return static_cast<int>(r);
}

// Offset of a co-linear spoofer from theta_u; nullopt when angles differ.
std::optional<double> derived_offset_deg(const mc::Scenario& sc) {
    if (!sc.spoofer)
        return std::nullopt;
    const double a0 = sc.spoofer->angles.front();
    for (double a : sc.spoofer->angles) {
        if (a != a0)
            return std::nullopt;
    }
    return rad2deg(a0 - sc.theta_u);
}

struct RowPoint {
    mc::Scenario scenario;
    std::optional<double> offset_deg;
};

RowPoint make_row_point(const SweepSpec& spec, double v) {
    mc::Scenario sc = spec.base;
    std::optional<double> offset =
        spec.base_offset_deg ? spec.base_offset_deg : derived_offset_deg(spec.base);

    switch (spec.axis) {
    case SweepAxis::snr_db:
        sc.sigma2 = snr_db_to_sigma2(v);
        break;
    case SweepAxis::num_elements:
        sc.geometry = model::UlaGeometry(int_axis_value(v, "M"), spec.base.geometry.spacing_ratio);
        break;
    case SweepAxis::snapshots:
        sc.snapshots = int_axis_value(v, "K");
        break;
    case SweepAxis::spoofer_antennas:
        if (!spec.base.spoofer || !offset)
            throw std::invalid_argument("sweep: the L axis requires a co-linear spoofer");
        sc.spoofer = model::SpooferConfig::co_linear(int_axis_value(v, "L"),
                                                     sc.theta_u + deg2rad(*offset));
        break;
    case SweepAxis::angular_offset_deg:
        if (!spec.base.spoofer)
            throw std::invalid_argument("sweep: the angular-offset axis requires a spoofer");
        offset = v;
        sc.spoofer = model::SpooferConfig::co_linear(spec.base.spoofer->num_antennas(),
                                                     sc.theta_u + deg2rad(v));
        break;
    case SweepAxis::phi_max_deg: {
        if (!spec.base.spoofer)
            throw std::invalid_argument("sweep: the phi_max axis requires a spoofer");
        if (!(v >= 0.0))
            throw std::invalid_argument("sweep: phi_max values must be >= 0");
        mc::PhaseSpreadModel ps;
        ps.phi_max = deg2rad(v);
        ps.redraw = spec.base.phase_spread ? spec.base.phase_spread->redraw
                                           : mc::PhaseRedraw::per_trial;
        sc.phase_spread = ps;
        break;
    }
    }

    if (!sc.spoofer)
        offset.reset();
    return {std::move(sc), offset};
}

// Null-hypothesis experiments depend on everything except the spoofer, so
// rows and curves sharing these fields share one false-alarm run.
std::string h0_cache_key(const mc::Scenario& sc) {
    char key[320];
    std::snprintf(key, sizeof key, "%d|%.17g|%.17g|%.17g|%d|%.17g|%lld|%llu|%d|%.17g|%.17g|%d",
                  sc.geometry.num_elements, sc.geometry.spacing_ratio, sc.theta_u, sc.sigma2,
                  sc.snapshots, sc.alpha, static_cast<long long>(sc.trials),
                  static_cast<unsigned long long>(sc.seed), sc.estimator_search.grid_points,
                  sc.estimator_search.guard_deg, sc.estimator_search.tol_rad,
                  sc.estimator_search.max_iter);
    return key;
}

ResultRow evaluate_row(const RowPoint& point, SweepAxis axis, double axis_value,
                       const SweepOptions& options,
                       std::map<std::string, mc::TrialResults>& h0_cache) {
    const mc::Scenario& sc = point.scenario;
    sc.validate();
    const auto start = std::chrono::steady_clock::now();

    ResultRow row;
    row.axis = axis;
    row.axis_value = axis_value;
    row.num_elements = sc.geometry.num_elements;
    row.snapshots = sc.snapshots;
    row.spoofer_antennas = sc.spoofer ? sc.spoofer->num_antennas() : 0;
    row.snr_db = sigma2_to_snr_db(sc.sigma2);
    row.theta_u_deg = rad2deg(sc.theta_u);
    row.angular_offset_deg = point.offset_deg;
    row.phi_max_deg = sc.phase_spread ? rad2deg(sc.phase_spread->phi_max) : 0.0;
    row.alpha = sc.alpha;

    const double crb_u = bounds::crb(sc.geometry, sc.theta_u, sc.sigma2, sc.snapshots);
    row.crb_k = crb_u;
    row.tau = auth::threshold(sc.alpha, crb_u);
    row.p_fa = auth::p_fa(row.tau, crb_u);

    if (sc.spoofer) {
        const auth::AnalyticReport report = auth::analytic_report(
            sc.geometry, sc.theta_u, *sc.spoofer, sc.sigma2, sc.snapshots, sc.alpha);
        row.mcrb_k = report.mcrb_k;
        row.theta0_deg = rad2deg(report.theta0);
        row.delta_deg = rad2deg(report.delta);
        if (sc.phase_spread && sc.phase_spread->phi_max > 0.0)
            row.p_sd = phase_averaged_analytic_p_sd(sc, options.analytic_phase_draws);
        else
            row.p_sd = report.probs.p_sd;
    }

    if (options.empirical) {
        mc::Scenario null_sc = sc;
        null_sc.spoofer.reset();
        null_sc.phase_spread.reset();
        const std::string key = h0_cache_key(null_sc);
        auto it = h0_cache.find(key);
        if (it == h0_cache.end())
            it = h0_cache.emplace(key, mc::run_trials(null_sc, std::nullopt, options.workers))
                     .first;
        row.p_fa_emp = it->second.exceed;

        if (sc.spoofer)
            row.p_sd_emp = mc::run_trials(sc, std::nullopt, options.workers).exceed;
    }

    if (options.timing) {
        const auto stop = std::chrono::steady_clock::now();
        row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
    return row;
}

void check_options(const SweepOptions& options) {
    if (options.workers < 1)
        throw std::invalid_argument("sweep: workers must be >= 1");
    if (options.analytic_phase_draws < 1)
        throw std::invalid_argument("sweep: analytic phase draws must be >= 1");
}

std::vector<ResultRow> run_sweep_with_cache(const SweepSpec& spec, const SweepOptions& options,
                                            std::map<std::string, mc::TrialResults>& h0_cache) {
    if (spec.values.empty())
        throw std::invalid_argument("sweep: the value list must be nonempty");
    spec.base.validate();

    std::vector<ResultRow> rows;
    rows.reserve(spec.values.size());
    for (double v : spec.values)
        rows.push_back(evaluate_row(make_row_point(spec, v), spec.axis, v, options, h0_cache));
    return rows;
}

std::vector<double> step_range(double start, double stop, double step) {
    std::vector<double> values;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        values.push_back(start + step * i);
    return values;
}

mc::Scenario figure_base(int num_elements, int snapshots, double snr_db, long long trials,
                         std::uint64_t seed) {
    mc::Scenario sc;
    sc.geometry = model::UlaGeometry::half_wavelength(num_elements);
    sc.theta_u = deg2rad(10.0);
    sc.sigma2 = snr_db_to_sigma2(snr_db);
    sc.snapshots = snapshots;
    sc.alpha = 1e-3;
    sc.trials = trials;
    sc.seed = seed;
    return sc;
}

SweepSpec offset_curve(mc::Scenario base, double offset_deg, SweepAxis axis,
                       std::vector<double> values) {
    SweepSpec spec;
    spec.axis = axis;
    spec.values = std::move(values);
    spec.base = std::move(base);
    spec.base.spoofer = model::SpooferConfig::co_linear(
        1, spec.base.theta_u + deg2rad(offset_deg));
    spec.base_offset_deg = offset_deg;
    return spec;
}

} // namespace

const char* axis_token(SweepAxis axis) noexcept {
    switch (axis) {
    case SweepAxis::snr_db:
        return "snr_db";
    case SweepAxis::num_elements:
        return "M";
    case SweepAxis::snapshots:
        return "K";
    case SweepAxis::spoofer_antennas:
        return "L";
    case SweepAxis::angular_offset_deg:
        return "angular_offset_deg";
    case SweepAxis::phi_max_deg:
        return "phi_max_deg";
    }
    return "unknown";
}

std::optional<SweepAxis> axis_from_token(const std::string& token) {
    if (token == "snr_db")
        return SweepAxis::snr_db;
    if (token == "M")
        return SweepAxis::num_elements;
    if (token == "K")
        return SweepAxis::snapshots;
    if (token == "L")
        return SweepAxis::spoofer_antennas;
    if (token == "angular_offset_deg")
        return SweepAxis::angular_offset_deg;
    if (token == "phi_max_deg")
        return SweepAxis::phi_max_deg;
    return std::nullopt;
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2a", "fig2b", "fig3"};
}

Preset preset_by_name(const std::string& name, long long trials, std::uint64_t seed) {
    Preset preset;
    preset.name = name;

    if (name == "fig1") {
        for (double offset : {0.25, 0.5, 1.0, 2.0, 4.0})
            preset.curves.push_back(offset_curve(figure_base(16, 20, 0.0, trials, seed), offset,
                                                 SweepAxis::snr_db, step_range(-15.0, 50.0, 1.0)));
        return preset;
    }
    if (name == "fig2a") {
        for (int m : {4, 16, 32, 64, 128})
            preset.curves.push_back(offset_curve(figure_base(m, 10, 0.0, trials, seed), 0.0,
                                                 SweepAxis::angular_offset_deg,
                                                 step_range(0.0, 8.0, 0.25)));
        return preset;
    }
    if (name == "fig2b") {
        for (int k : {2, 5, 10, 20, 50})
            preset.curves.push_back(offset_curve(figure_base(32, k, 0.0, trials, seed), 0.0,
                                                 SweepAxis::angular_offset_deg,
                                                 step_range(0.0, 8.0, 0.25)));
        return preset;
    }
    if (name == "fig3") {
        const std::vector<double> l_values = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
        for (double phi_max_deg : {0.0, 10.0}) {
            for (double offset : {0.25, 1.0, 2.0, 4.0}) {
                SweepSpec spec = offset_curve(figure_base(8, 2, 5.0, trials, seed), offset,
                                              SweepAxis::spoofer_antennas, l_values);
                if (phi_max_deg > 0.0) {
                    mc::PhaseSpreadModel ps;
                    ps.phi_max = deg2rad(phi_max_deg);
                    ps.redraw = mc::PhaseRedraw::per_trial;
                    spec.base.phase_spread = ps;
                }
                preset.curves.push_back(std::move(spec));
            }
        }
        return preset;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig1, fig2a, fig2b, fig3)");
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    check_options(options);
    std::map<std::string, mc::TrialResults> h0_cache;
    return run_sweep_with_cache(spec, options, h0_cache);
}

std::vector<ResultRow> run_preset(const Preset& preset, const SweepOptions& options) {
    check_options(options);
    std::map<std::string, mc::TrialResults> h0_cache;
    std::vector<ResultRow> rows;
    for (const SweepSpec& spec : preset.curves) {
        std::vector<ResultRow> curve = run_sweep_with_cache(spec, options, h0_cache);
        rows.insert(rows.end(), curve.begin(), curve.end());
    }
    return rows;
}

double phase_averaged_analytic_p_sd(const mc::Scenario& scenario, int draws) {
    scenario.validate();
    if (!scenario.spoofer)
        throw std::invalid_argument("phase_averaged_analytic_p_sd: scenario has no spoofer");
    if (draws < 1)
        throw std::invalid_argument("phase_averaged_analytic_p_sd: draws must be >= 1");

    const model::SpooferConfig& sp = *scenario.spoofer;
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
        const std::vector<double> phases = mc::phase_draw(scenario, d);
        std::vector<model::cplx> weights(sp.weights.size());
        for (std::size_t l = 0; l < weights.size(); ++l)
            weights[l] = sp.weights[l] * std::polar(1.0, phases[l]);
        const model::SpooferConfig phased(sp.angles, std::move(weights));
        const auth::AnalyticReport report =
            auth::analytic_report(scenario.geometry, scenario.theta_u, phased, scenario.sigma2,
                                  scenario.snapshots, scenario.alpha);
        acc += report.probs.p_sd;
    }
    return acc / static_cast<double>(draws);
}

} // namespace aoapla::cli
