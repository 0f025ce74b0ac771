// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/config.hpp"
#include "aoapla/csv.hpp"
#include "aoapla/report.hpp"
#include "aoapla/svg.hpp"
#include "aoapla/sweep.hpp"
#include "aoapla/validate.hpp"
#include "aoapla/version.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>

namespace cli = aoapla::cli;
namespace fs = std::filesystem;

namespace {

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("AOA_PLA_SEED");
    if (!raw || !*raw)
        return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (errno != 0 || end == raw || *end != '\0' || raw[0] == '-')
        throw cli::ConfigError("AOA_PLA_SEED: expected an unsigned integer, got '" +
                               std::string(raw) + "'");
    return value;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

int resolve_workers(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct SweepArgs {
    std::string config_path;
    std::string preset_name;
    std::string out_dir = ".";
    long long trials = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    int phase_draws = 0;
    bool empirical = false;
    bool plot = false;
    bool timing = false;
    bool has_trials = false;
    bool has_seed = false;
    bool has_phase_draws = false;
};

int run_sweep_command(const SweepArgs& args) {
    if (args.config_path.empty() == args.preset_name.empty())
        throw cli::ConfigError("sweep: pass exactly one of --config or --preset");

    const std::optional<std::uint64_t> env = env_seed();
    cli::SweepOptions options;
    options.empirical = args.empirical;
    options.workers = resolve_workers(args.workers);
    options.timing = args.timing;
    if (args.has_phase_draws)
        options.analytic_phase_draws = args.phase_draws;

    std::vector<cli::ResultRow> rows;
    std::uint64_t seed = 0;
    std::string name;
    if (!args.preset_name.empty()) {
        const long long trials = args.has_trials ? args.trials : 100000;
        seed = args.has_seed ? args.seed : env.value_or(0);
        const cli::Preset preset = cli::preset_by_name(args.preset_name, trials, seed);
        name = preset.name;
        rows = cli::run_preset(preset, options);
    } else {
        cli::ParsedConfig config = cli::load_config(args.config_path);
        cli::SweepSpec spec = cli::to_sweep_spec(config);
        if (args.has_seed)
            spec.base.seed = args.seed;
        else if (!config.seed_from_config && env)
            spec.base.seed = *env;
        if (args.has_trials)
            spec.base.trials = args.trials;
        if (!args.has_phase_draws)
            options.analytic_phase_draws = config.analytic_phase_draws;
        seed = spec.base.seed;
        name = fs::path(args.config_path).stem().string();
        if (name.empty())
            name = "sweep";
        rows = cli::run_sweep(spec, options);
    }

    fs::create_directories(args.out_dir);
    const fs::path csv_path = fs::path(args.out_dir) / (name + ".csv");
    write_file(csv_path, cli::render_csv(rows, seed, options.timing));
    std::printf("wrote %s (%zu rows)\n", csv_path.string().c_str(), rows.size());
    if (args.plot) {
        const fs::path svg_path = fs::path(args.out_dir) / (name + ".svg");
        write_file(svg_path, cli::render_rows_svg(rows, name));
        std::printf("wrote %s\n", svg_path.string().c_str());
    }
    return 0;
}

int run_analytic_command(const std::string& config_path, const std::string& json_path) {
    cli::ParsedConfig config = cli::load_config(config_path);
    if (!config.seed_from_config) {
        if (const std::optional<std::uint64_t> env = env_seed())
            config.scenario.seed = *env;
    }
    if (!config.scenario.spoofer)
        throw cli::ConfigError("spoofer: analytic report requires a [spoofer] section");
    const cli::AnalyticPoint point = cli::make_analytic_point(
        config.scenario, config.analytic_phase_draws, config.spoofer_offset_deg);
    std::fputs(cli::render_analytic_text(point).c_str(), stdout);
    if (!json_path.empty()) {
        write_file(json_path, cli::render_analytic_json(point));
        std::printf("wrote %s\n", json_path.c_str());
    }
    return 0;
}

int run_validate_command(bool inject_s1_fault) {
    const cli::ValidationReport report = cli::run_validation(inject_s1_fault);
    std::fputs(cli::render_validation_text(report).c_str(), stdout);
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"angle-of-arrival authentication: bounds, error probabilities, simulation"};
    app.set_version_flag("--version", std::string("aoa-pla-lab v") + aoapla::version_string);
    app.require_subcommand(1);

    std::string analytic_config;
    std::string analytic_json;
    CLI::App* analytic =
        app.add_subcommand("analytic", "closed-form report for one operating point");
    analytic->add_option("--config", analytic_config, "scenario configuration file")
        ->required();
    analytic->add_option("--json", analytic_json, "write the report as JSON to this path");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV and optional SVG");
    sweep->add_option("--config", sweep_args.config_path,
                      "configuration file with a [sweep] section");
    sweep->add_option("--preset", sweep_args.preset_name, "built-in sweep preset")
        ->check(CLI::IsMember(cli::preset_names()));
    sweep->add_option("--out", sweep_args.out_dir, "output directory (default .)");
    CLI::Option* trials_opt =
        sweep->add_option("--trials", sweep_args.trials, "Monte Carlo trials per point")
            ->check(CLI::Range(1LL, 0xffffffffLL));
    CLI::Option* seed_opt = sweep->add_option("--seed", sweep_args.seed, "base RNG seed");
    sweep->add_option("--workers", sweep_args.workers, "worker threads, 0 = all cores")
        ->check(CLI::Range(0, 1024));
    CLI::Option* draws_opt =
        sweep->add_option("--phase-draws", sweep_args.phase_draws,
                          "phase draws averaged into analytic detection curves")
            ->check(CLI::Range(1, 10000000));
    sweep->add_flag("--empirical", sweep_args.empirical,
                    "run Monte Carlo trials alongside the closed forms");
    sweep->add_flag("--plot", sweep_args.plot, "also write an SVG figure");
    sweep->add_flag("--timing", sweep_args.timing,
                    "add per-row runtime_ms (breaks byte-for-byte reproducibility)");

    bool inject_s1_fault = false;
    CLI::App* validate = app.add_subcommand("validate", "run the oracle cross-check suite");
    validate->add_flag("--inject-s1-fault", inject_s1_fault,
                       "test hook: perturb the weighted-sum S1 value by 1e-6");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    sweep_args.has_trials = trials_opt->count() > 0;
    sweep_args.has_seed = seed_opt->count() > 0;
    sweep_args.has_phase_draws = draws_opt->count() > 0;

    try {
        if (analytic->parsed())
            return run_analytic_command(analytic_config, analytic_json);
        if (sweep->parsed())
            return run_sweep_command(sweep_args);
        if (validate->parsed())
            return run_validate_command(inject_s1_fault);
    } catch (const cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
