// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/authtest.hpp"
#include "aoapla/montecarlo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aoapla::cli {

// Parameter axes a sweep can walk. Tokens on the config surface are
// "snr_db", "M", "K", "L", "angular_offset_deg", "phi_max_deg".
enum class SweepAxis {
    snr_db,
    num_elements,
    snapshots,
    spoofer_antennas,
    angular_offset_deg,
    phi_max_deg,
};

const char* axis_token(SweepAxis axis) noexcept;
std::optional<SweepAxis> axis_from_token(const std::string& token);

// One curve: a base scenario plus the axis values substituted row by row.
// Sweeps over L or the angular offset rebuild the spoofer co-linearly at
// theta_u + offset with equal gains summing to one, which requires the base
// spoofer itself to be co-linear.
struct SweepSpec {
    SweepAxis axis = SweepAxis::snr_db;
    std::vector<double> values;
    mc::Scenario base;
    // Spoofer offset in degrees as configured, kept so result rows echo the
    // round number instead of one reconstructed from radians.
    std::optional<double> base_offset_deg;
};

// One sweep point. Parameter columns are always present; analytic spoofer
// columns require a spoofer and empirical fields require --empirical, so
// both groups are optional and serialize as empty cells when absent.
struct ResultRow {
    SweepAxis axis = SweepAxis::snr_db;
    double axis_value = 0.0;

    int num_elements = 0;
    int snapshots = 0;
    int spoofer_antennas = 0;  // 0 on rows without a spoofer
    double snr_db = 0.0;
    double theta_u_deg = 0.0;
    std::optional<double> angular_offset_deg;
    double phi_max_deg = 0.0;
    double alpha = 0.0;

    double crb_k = 0.0;
    std::optional<double> mcrb_k;
    std::optional<double> theta0_deg;
    std::optional<double> delta_deg;
    double tau = 0.0;
    double p_fa = 0.0;
    std::optional<double> p_sd;

    std::optional<mc::EmpiricalEstimate> p_fa_emp;
    std::optional<mc::EmpiricalEstimate> p_sd_emp;
    std::optional<double> runtime_ms;
};

struct SweepOptions {
    bool empirical = false;
    int workers = 1;
    bool timing = false;              // fill runtime_ms (off keeps CSV reproducible)
    int analytic_phase_draws = 1000;  // averaging depth for phase-variant analytic rows
};

// Figure presets: named bundles of curves over one axis.
struct Preset {
    std::string name;
    std::vector<SweepSpec> curves;
};

std::vector<std::string> preset_names();
Preset preset_by_name(const std::string& name, long long trials, std::uint64_t seed);

// Evaluates every row of a sweep in order. Empirical H0 runs are shared
// between rows with identical null scenarios, so multi-curve presets pay
// for each false-alarm experiment once.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, const SweepOptions& options);
std::vector<ResultRow> run_preset(const Preset& preset, const SweepOptions& options);

// Analytic successful-detection probability under random spoofer phases,
// averaged over deterministic draws from the fixed-phase stream. Converges
// to the closed form at the expected coherent gain as L grows.
double phase_averaged_analytic_p_sd(const mc::Scenario& scenario, int draws);

} // namespace aoapla::cli
