// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoapla/angles.hpp"
#include "aoapla/config.hpp"
#include "aoapla/csv.hpp"
#include "aoapla/report.hpp"
#include "aoapla/svg.hpp"
#include "aoapla/sweep.hpp"
#include "aoapla/validate.hpp"
#include "aoapla/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace aoapla;
using cli::SweepAxis;

namespace {

void expect_config_error(const std::string& text, const std::string& needle) {
    try {
        cli::parse_config_text(text);
        FAIL_CHECK("expected a config error mentioning '" << needle << "'");
    } catch (const cli::ConfigError& e) {
        const std::string what = e.what();
        CHECK_MESSAGE(what.find(needle) != std::string::npos,
                      "'" << what << "' lacks '" << needle << "'");
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t pos = text.find('\n', start);
        if (pos == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return lines;
}

const char* kFullConfig = R"(# exercise every section
[scenario]
elements = 16
theta-u-deg = 10
snr-db = 5
snapshots = 20
alpha = 1e-3
trials = 50000
seed = 42

[spoofer]
antennas = 4
angular-offset-deg = 0.25
phi-max-deg = 10
phase-redraw = fixed

[sweep]
axis = snr_db
values = -15:50:1

[search]
grid-points = 4096
guard-deg = 2.5
tol-rad = 1e-11
max-iter = 200

[output]
analytic-phase-draws = 250
)";

} // namespace

TEST_CASE("a full config file populates every surface") {
    const cli::ParsedConfig cfg = cli::parse_config_text(kFullConfig);
    CHECK(cfg.scenario.geometry.num_elements == 16);
    CHECK(cfg.scenario.geometry.spacing_ratio == 0.5);
    CHECK(cfg.scenario.theta_u == deg2rad(10.0));
    CHECK(cfg.scenario.sigma2 == doctest::Approx(snr_db_to_sigma2(5.0)).epsilon(1e-15));
    CHECK(cfg.scenario.snapshots == 20);
    CHECK(cfg.scenario.alpha == 1e-3);
    CHECK(cfg.scenario.trials == 50000);
    CHECK(cfg.scenario.seed == 42u);
    CHECK(cfg.seed_from_config);

    REQUIRE(cfg.scenario.spoofer.has_value());
    CHECK(cfg.scenario.spoofer->num_antennas() == 4);
    for (double angle : cfg.scenario.spoofer->angles)
        CHECK(angle == doctest::Approx(deg2rad(10.25)).epsilon(1e-15));
    for (model::cplx w : cfg.scenario.spoofer->weights)
        CHECK(w == model::cplx(0.25, 0.0));
    REQUIRE(cfg.spoofer_offset_deg.has_value());
    CHECK(*cfg.spoofer_offset_deg == 0.25);

    REQUIRE(cfg.scenario.phase_spread.has_value());
    CHECK(cfg.scenario.phase_spread->phi_max == doctest::Approx(deg2rad(10.0)).epsilon(1e-15));
    CHECK(cfg.scenario.phase_spread->redraw == mc::PhaseRedraw::fixed);

    REQUIRE(cfg.axis.has_value());
    CHECK(*cfg.axis == SweepAxis::snr_db);
    REQUIRE(cfg.values.size() == 66);
    CHECK(cfg.values.front() == -15.0);
    CHECK(cfg.values.back() == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(cfg.analytic_phase_draws == 250);

    CHECK(cfg.scenario.estimator_search.grid_points == 4096);
    CHECK(cfg.scenario.estimator_search.guard_deg == 2.5);
    CHECK(cfg.scenario.estimator_search.tol_rad == 1e-11);
    CHECK(cfg.scenario.estimator_search.max_iter == 200);

    const cli::SweepSpec spec = cli::to_sweep_spec(cfg);
    CHECK(spec.axis == SweepAxis::snr_db);
    CHECK(spec.values == cfg.values);
    CHECK(spec.base.geometry.num_elements == 16);
    CHECK(spec.base_offset_deg == cfg.spoofer_offset_deg);
}

TEST_CASE("explicit spoofer angles and gains") {
    const cli::ParsedConfig cfg = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
sigma2 = 0.5
snapshots = 2

[spoofer]
angles-deg = 9, 14
gains = 0.55, 0.45
)");
    REQUIRE(cfg.scenario.spoofer.has_value());
    CHECK(cfg.scenario.spoofer->angles[0] == doctest::Approx(deg2rad(9.0)).epsilon(1e-15));
    CHECK(cfg.scenario.spoofer->angles[1] == doctest::Approx(deg2rad(14.0)).epsilon(1e-15));
    CHECK(cfg.scenario.spoofer->weights[0] == model::cplx(0.55, 0.0));
    CHECK(cfg.scenario.spoofer->weights[1] == model::cplx(0.45, 0.0));
    CHECK(cfg.scenario.sigma2 == 0.5);
    CHECK_FALSE(cfg.spoofer_offset_deg.has_value());
    CHECK_FALSE(cfg.seed_from_config);
    CHECK_THROWS_AS(cli::to_sweep_spec(cfg), cli::ConfigError);
}

TEST_CASE("config errors carry the section.key path") {
    const std::string base = R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 0
snapshots = 4
)";
    expect_config_error("[scenario]\nelements = 1\ntheta-u-deg = 0\nsnr-db = 0\nsnapshots = 1\n",
                        "scenario.elements");
    expect_config_error("[scenario]\nelements = 1\ntheta-u-deg = 0\nsnr-db = 0\nsnapshots = 1\n",
                        "M must be >= 2");
    expect_config_error("[scenario]\nelements = 8\nsnr-db = 0\nsnapshots = 1\n",
                        "scenario.theta-u-deg");
    expect_config_error(
        "[scenario]\nelements = 8\ntheta-u-deg = 0\nsnr-db = 0\nsigma2 = 1\nsnapshots = 1\n",
        "not both");
    expect_config_error("[scenario]\nelements = 8\ntheta-u-deg = 0\nsnapshots = 1\n",
                        "scenario.snr-db");
    expect_config_error(base + "[bogus]\nkey = 1\n", "unknown section");
    expect_config_error(base + "unexpected = 1\n", "scenario.unexpected");
    expect_config_error("elements = 8\n", "outside any [section]");
    expect_config_error(base + "elements = 8\n", "duplicate key");
    expect_config_error("[scenario]\n[scenario]\n", "duplicate section");
    expect_config_error(base + "[sweep]\naxis = nonsense\nvalues = 1\n", "sweep.axis");
    expect_config_error(base + "[sweep]\naxis = K\nvalues = 1:5:0\n", "range step");
    expect_config_error(base + "[sweep]\naxis = K\nvalues = 5:1:1\n", "stop");
    expect_config_error(base + "[sweep]\naxis = K\nvalues = 1:2\n", "start:stop:step");
    expect_config_error(base + "[spoofer]\nangular-offset-deg =\n", "empty value");
    expect_config_error(base + "[spoofer]\nangular-offset-deg = 85\n",
                        "spoofer.angular-offset-deg");
    expect_config_error(base + "[spoofer]\nangles-deg = 5, 9\ngains = 1\n", "spoofer.gains");
    expect_config_error(
        base + "[spoofer]\nangular-offset-deg = 1\nphase-redraw = sometimes\n",
        "per-trial or fixed");
    expect_config_error("[scenario]\nelements = 8\ntheta-u-deg = 0\nsnr-db = 0\nsnapshots = 0\n",
                        "scenario.snapshots");
    expect_config_error(
        "[scenario]\nelements = 8\ntheta-u-deg = 0\nsnr-db = 0\nsnapshots = 1\nalpha = 1.5\n",
        "scenario.alpha");
    expect_config_error(
        "[scenario]\nelements = 8\ntheta-u-deg = 0\nsnr-db = zero\nsnapshots = 1\n",
        "not a finite number");
    CHECK_THROWS_WITH_AS(cli::load_config("/nonexistent/path.cfg"),
                         doctest::Contains("cannot open"), cli::ConfigError);
}

TEST_CASE("value lists accept commas and inclusive ranges") {
    const cli::ParsedConfig ranged = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 0
snapshots = 4

[sweep]
axis = angular_offset_deg
values = 0:8:0.25
)");
    REQUIRE(ranged.values.size() == 33);
    CHECK(ranged.values[1] == 0.25);
    CHECK(ranged.values.back() == doctest::Approx(8.0).epsilon(1e-12));

    const cli::ParsedConfig listed = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 0
snapshots = 4

[sweep]
axis = L
values = 1, 2, 4, 8
)");
    CHECK(listed.values == std::vector<double>{1.0, 2.0, 4.0, 8.0});
    CHECK(*listed.axis == SweepAxis::spoofer_antennas);
}

TEST_CASE("axis tokens round-trip") {
    for (SweepAxis axis :
         {SweepAxis::snr_db, SweepAxis::num_elements, SweepAxis::snapshots,
          SweepAxis::spoofer_antennas, SweepAxis::angular_offset_deg, SweepAxis::phi_max_deg}) {
        const auto back = cli::axis_from_token(cli::axis_token(axis));
        REQUIRE(back.has_value());
        CHECK(*back == axis);
    }
    CHECK_FALSE(cli::axis_from_token("theta").has_value());
}

TEST_CASE("figure presets have the documented shape") {
    CHECK(cli::preset_names() == std::vector<std::string>{"fig1", "fig2a", "fig2b", "fig3"});
    CHECK_THROWS_AS(cli::preset_by_name("fig9", 1000, 0), std::invalid_argument);

    const cli::Preset fig1 = cli::preset_by_name("fig1", 12345, 9u);
    REQUIRE(fig1.curves.size() == 5);
    const std::vector<double> offsets = {0.25, 0.5, 1.0, 2.0, 4.0};
    for (std::size_t i = 0; i < 5; ++i) {
        const cli::SweepSpec& spec = fig1.curves[i];
        CHECK(spec.axis == SweepAxis::snr_db);
        CHECK(spec.values.size() == 66);
        CHECK(spec.base.geometry.num_elements == 16);
        CHECK(spec.base.snapshots == 20);
        CHECK(spec.base.trials == 12345);
        CHECK(spec.base.seed == 9u);
        CHECK(spec.base_offset_deg == offsets[i]);
        REQUIRE(spec.base.spoofer.has_value());
        CHECK(spec.base.spoofer->num_antennas() == 1);
    }

    const cli::Preset fig2a = cli::preset_by_name("fig2a", 1000, 0);
    REQUIRE(fig2a.curves.size() == 5);
    const std::vector<int> elements = {4, 16, 32, 64, 128};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(fig2a.curves[i].axis == SweepAxis::angular_offset_deg);
        CHECK(fig2a.curves[i].values.size() == 33);
        CHECK(fig2a.curves[i].base.geometry.num_elements == elements[i]);
        CHECK(fig2a.curves[i].base.snapshots == 10);
    }

    const cli::Preset fig2b = cli::preset_by_name("fig2b", 1000, 0);
    REQUIRE(fig2b.curves.size() == 5);
    const std::vector<int> snapshots = {2, 5, 10, 20, 50};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(fig2b.curves[i].base.geometry.num_elements == 32);
        CHECK(fig2b.curves[i].base.snapshots == snapshots[i]);
    }

    const cli::Preset fig3 = cli::preset_by_name("fig3", 1000, 0);
    REQUIRE(fig3.curves.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        const cli::SweepSpec& spec = fig3.curves[i];
        CHECK(spec.axis == SweepAxis::spoofer_antennas);
        REQUIRE(spec.values.size() == 11);
        CHECK(spec.values.front() == 1.0);
        CHECK(spec.values.back() == 1024.0);
        CHECK(spec.base.geometry.num_elements == 8);
        CHECK(spec.base.snapshots == 2);
        CHECK(spec.base.phase_spread.has_value() == (i >= 4));
    }
}

TEST_CASE("analytic sweep rows follow the offset preset") {
    cli::SweepOptions options;
    const cli::Preset fig2a = cli::preset_by_name("fig2a", 1000, 0);
    const std::vector<cli::ResultRow> rows = cli::run_preset(fig2a, options);
    REQUIRE(rows.size() == 165);

    // At zero offset the spoofer is indistinguishable, so the detection rate
    // collapses to the design false-alarm level.
    REQUIRE(rows.front().p_sd.has_value());
    CHECK(*rows.front().p_sd == doctest::Approx(1e-3).epsilon(1e-3));

    // Detection never degrades as the first curve's offset widens.
    for (std::size_t i = 1; i < 33; ++i) {
        REQUIRE(rows[i].p_sd.has_value());
        CHECK(*rows[i].p_sd >= *rows[i - 1].p_sd - 1e-12);
        CHECK(rows[i].num_elements == 4);
        CHECK(rows[i].axis == SweepAxis::angular_offset_deg);
    }
}

TEST_CASE("csv output is versioned, stable and worker-independent") {
    CHECK_THROWS_AS(cli::parse_config_text(
                        "[scenario]\nelements = 8\ntheta-u-deg = 10\nsnr-db = 5\n"
                        "snapshots = 2\nseed = 31u\n"),
                    cli::ConfigError);

    const cli::ParsedConfig parsed = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 5
snapshots = 2
alpha = 1e-3
trials = 2000
seed = 31

[spoofer]
antennas = 1
angular-offset-deg = 1

[sweep]
axis = angular_offset_deg
values = 0.5, 1, 2
)");
    const cli::SweepSpec spec = cli::to_sweep_spec(parsed);

    cli::SweepOptions options;
    options.empirical = true;
    options.workers = 1;
    const std::vector<cli::ResultRow> once = cli::run_sweep(spec, options);
    const std::vector<cli::ResultRow> twice = cli::run_sweep(spec, options);
    options.workers = 4;
    const std::vector<cli::ResultRow> wide = cli::run_sweep(spec, options);

    const std::string csv1 = cli::render_csv(once, parsed.scenario.seed, false);
    CHECK(csv1 == cli::render_csv(twice, parsed.scenario.seed, false));
    CHECK(csv1 == cli::render_csv(wide, parsed.scenario.seed, false));

    const std::vector<std::string> lines = split_lines(csv1);
    REQUIRE(lines.size() == 2 + once.size());
    CHECK(lines[0] == std::string("# aoa-pla-lab v") + version_string + " seed=31");
    CHECK(lines[1] == cli::csv_column_line(false));
    CHECK(split_fields(lines[1]).size() == 22);

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_fields(lines[i]);
        REQUIRE(fields.size() == 22);
        CHECK(fields[0] == "angular_offset_deg");
        CHECK_FALSE(fields[17].empty());  // p_fa_hat
        CHECK_FALSE(fields[18].empty());  // p_sd_hat
        CHECK_FALSE(fields[21].empty());  // trials
        CHECK(fields[21] == "2000");
    }

    // One shared null scenario serves every row of the offset sweep.
    const std::vector<std::string> first = split_fields(lines[2]);
    const std::vector<std::string> second = split_fields(lines[3]);
    CHECK(first[17] == second[17]);
}

TEST_CASE("analytic-only csv rows leave the empirical cells empty") {
    const cli::ParsedConfig parsed = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 5
snapshots = 2

[spoofer]
antennas = 1
angular-offset-deg = 1

[sweep]
axis = snr_db
values = 0, 5
)");
    cli::SweepOptions options;
    const std::vector<cli::ResultRow> rows = cli::run_sweep(cli::to_sweep_spec(parsed), options);
    const std::vector<std::string> lines = split_lines(cli::render_csv(rows, 0, false));
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_fields(lines[i]);
        REQUIRE(fields.size() == 22);
        for (std::size_t f = 17; f < 22; ++f)
            CHECK(fields[f].empty());
        CHECK_FALSE(fields[16].empty());  // analytic p_sd is present
    }

    const std::vector<std::string> timed =
        split_lines(cli::render_csv(rows, 0, true));
    CHECK(timed[1] == cli::csv_column_line(true));
    CHECK(split_fields(timed[1]).back() == "runtime_ms");
    CHECK(split_fields(timed[2]).size() == 23);
}

TEST_CASE("row timing lands in the csv when requested") {
    const cli::ParsedConfig parsed = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 5
snapshots = 2

[spoofer]
antennas = 1
angular-offset-deg = 1

[sweep]
axis = snr_db
values = 0
)");
    cli::SweepOptions options;
    options.timing = true;
    const std::vector<cli::ResultRow> rows = cli::run_sweep(cli::to_sweep_spec(parsed), options);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].runtime_ms.has_value());
    CHECK(*rows[0].runtime_ms >= 0.0);
    const std::vector<std::string> lines = split_lines(cli::render_csv(rows, 0, true));
    CHECK_FALSE(split_fields(lines[2]).back().empty());
}

TEST_CASE("phase-averaged detection converges to the coherent-gain closed form") {
    mc::Scenario sc;
    sc.geometry = model::UlaGeometry::half_wavelength(8);
    sc.theta_u = deg2rad(10.0);
    sc.sigma2 = snr_db_to_sigma2(5.0);
    sc.snapshots = 2;
    sc.alpha = 1e-3;

    // Without a phase-spread model every draw is the zero vector.
    sc.spoofer = model::SpooferConfig::co_linear(2, sc.theta_u + deg2rad(2.0));
    const auth::AnalyticReport plain = auth::analytic_report(
        sc.geometry, sc.theta_u, *sc.spoofer, sc.sigma2, sc.snapshots, sc.alpha);
    CHECK(cli::phase_averaged_analytic_p_sd(sc, 5) ==
          doctest::Approx(plain.probs.p_sd).epsilon(1e-15));

    sc.phase_spread = mc::PhaseSpreadModel{deg2rad(25.0), mc::PhaseRedraw::per_trial};
    const double one_draw = cli::phase_averaged_analytic_p_sd(sc, 1);
    const double many_draws = cli::phase_averaged_analytic_p_sd(sc, 500);
    CHECK(one_draw != many_draws);

    // Many antennas average the weight phases, so the spread curve approaches
    // a deterministic spoofer whose gain is the expected coherent gain.
    mc::Scenario wide = sc;
    const double offset = deg2rad(2.0);
    wide.spoofer = model::SpooferConfig::co_linear(1024, sc.theta_u + offset);
    const double averaged = cli::phase_averaged_analytic_p_sd(wide, 64);
    const double gain = mc::expected_coherent_gain(deg2rad(25.0));
    const model::SpooferConfig shrunk({sc.theta_u + offset}, {model::cplx(gain, 0.0)});
    const auth::AnalyticReport limit = auth::analytic_report(
        sc.geometry, sc.theta_u, shrunk, sc.sigma2, sc.snapshots, sc.alpha);
    CHECK(std::abs(averaged - limit.probs.p_sd) < 0.02);

    CHECK_THROWS_AS(cli::phase_averaged_analytic_p_sd(wide, 0), std::invalid_argument);
    mc::Scenario bare = sc;
    bare.spoofer.reset();
    bare.phase_spread.reset();
    CHECK_THROWS_AS(cli::phase_averaged_analytic_p_sd(bare, 4), std::invalid_argument);
}

TEST_CASE("svg plots render finite series and reject empty ones") {
    cli::SvgPlotSpec spec;
    spec.title = "detection sweep";
    spec.x_label = "SNR (dB)";
    spec.y_label = "probability";

    cli::SvgSeries line;
    line.label = "P_SD off=1deg";
    line.x = {0.0, 1.0, 2.0};
    line.y = {0.1, 0.5, 0.9};
    cli::SvgSeries points = line;
    points.label = "P_SD off=1deg (sim)";
    points.line = false;
    points.y_low = {0.05, 0.45, 0.85};
    points.y_high = {0.15, 0.55, 0.95};

    const std::string svg = cli::render_svg_plot(spec, {line, points});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("detection sweep") != std::string::npos);
    CHECK(svg.find("SNR (dB)") != std::string::npos);
    CHECK(svg.find("P_SD off=1deg (sim)") != std::string::npos);

    CHECK_THROWS_AS(cli::render_svg_plot(spec, {}), std::invalid_argument);
    cli::SvgSeries gaps;
    gaps.label = "empty";
    gaps.x = {0.0};
    gaps.y = {std::nan("")};
    CHECK_THROWS_AS(cli::render_svg_plot(spec, {gaps}), std::invalid_argument);

    spec.log_x = true;
    cli::SvgSeries negative = line;
    negative.x = {-1.0, 1.0, 2.0};
    CHECK_THROWS_AS(cli::render_svg_plot(spec, {negative}), std::invalid_argument);
}

TEST_CASE("sweep rows render to a figure with analytic and simulated series") {
    const cli::ParsedConfig parsed = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 5
snapshots = 2
trials = 1000
seed = 3

[spoofer]
antennas = 1
angular-offset-deg = 1

[sweep]
axis = snr_db
values = 0, 5, 10
)");
    cli::SweepOptions options;
    options.empirical = true;
    const std::vector<cli::ResultRow> rows = cli::run_sweep(cli::to_sweep_spec(parsed), options);
    const std::string svg = cli::render_rows_svg(rows, "offset 1 deg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("P_SD") != std::string::npos);
    CHECK(svg.find("(sim)") != std::string::npos);
    CHECK(svg.find("SNR (dB)") != std::string::npos);

    // Without a spoofer the figure falls back to the false-alarm curve.
    const cli::ParsedConfig null_cfg = cli::parse_config_text(R"(
[scenario]
elements = 8
theta-u-deg = 10
snr-db = 5
snapshots = 2

[sweep]
axis = snr_db
values = 0, 5, 10
)");
    const std::vector<cli::ResultRow> null_rows =
        cli::run_sweep(cli::to_sweep_spec(null_cfg), cli::SweepOptions{});
    const std::string null_svg = cli::render_rows_svg(null_rows, "no spoofer");
    CHECK(null_svg.find("P_FA") != std::string::npos);
}

TEST_CASE("analytic report serializes to text and json") {
    mc::Scenario sc;
    sc.geometry = model::UlaGeometry::half_wavelength(16);
    sc.theta_u = deg2rad(10.0);
    sc.sigma2 = snr_db_to_sigma2(5.0);
    sc.snapshots = 20;
    sc.alpha = 1e-3;
    sc.spoofer = model::SpooferConfig::co_linear(1, sc.theta_u + deg2rad(0.25));

    const cli::AnalyticPoint point = cli::make_analytic_point(sc, 100, 0.25);
    const std::string text = cli::render_analytic_text(point);
    CHECK(text.find("scenario") != std::string::npos);
    CHECK(text.find("crb_k") != std::string::npos);
    CHECK(text.find("p_sd") != std::string::npos);
    CHECK(text.find("p_sd_phase_avg") == std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(cli::render_analytic_json(point));
    CHECK(j["version"] == version_string);
    CHECK(j["scenario"]["elements"] == 16);
    CHECK(j["scenario"]["snapshots"] == 20);
    CHECK(j["scenario"]["angular_offset_deg"] == 0.25);
    CHECK(j["bounds"]["crb_k"].get<double>() == point.report.crb_k);
    CHECK(j["test"]["p_sd"].get<double>() == point.report.probs.p_sd);
    CHECK(j["search"]["converged"] == true);

    // A phase-spread model adds the averaged detection estimate.
    sc.phase_spread = mc::PhaseSpreadModel{deg2rad(10.0), mc::PhaseRedraw::per_trial};
    const cli::AnalyticPoint spread = cli::make_analytic_point(sc, 50, 0.25);
    REQUIRE(spread.p_sd_phase_avg.has_value());
    CHECK(cli::render_analytic_text(spread).find("p_sd_phase_avg") != std::string::npos);

    mc::Scenario bare = sc;
    bare.spoofer.reset();
    bare.phase_spread.reset();
    CHECK_THROWS_AS(cli::make_analytic_point(bare, 10, std::nullopt), std::invalid_argument);
}

TEST_CASE("self-validation passes and the fault injection trips it") {
    const cli::ValidationReport healthy = cli::run_validation(false);
    CHECK(healthy.all_passed());
    CHECK(healthy.checks.size() >= 8);
    const std::string text = cli::render_validation_text(healthy);
    CHECK(text.find("[PASS]") != std::string::npos);
    CHECK(text.find("[FAIL]") == std::string::npos);

    const cli::ValidationReport faulted = cli::run_validation(true);
    CHECK_FALSE(faulted.all_passed());
    bool s1_failed = false;
    for (const cli::ValidationCheck& check : faulted.checks)
        if (check.name == "s1-closed-form" && !check.passed)
            s1_failed = true;
    CHECK(s1_failed);
    CHECK(cli::render_validation_text(faulted).find("[FAIL]") != std::string::npos);
}
