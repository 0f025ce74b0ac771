// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/sweep.hpp"

#include <stdexcept>
#include <string>

namespace aoapla::cli {

// Raised on malformed configuration; the message names the offending
// section.key path.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parsed key = value configuration. Angles and SNR are degrees and dB in
// the file and converted here, in one place, to radians and linear scale.
struct ParsedConfig {
    mc::Scenario scenario;
    std::optional<double> spoofer_offset_deg;  // set for co-linear spoofer configs
    std::optional<SweepAxis> axis;
    std::vector<double> values;
    int analytic_phase_draws = 1000;
    // True when the file sets scenario.seed itself; a file seed outranks the
    // AOA_PLA_SEED environment default.
    bool seed_from_config = false;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig load_config(const std::string& path);

// Requires a [sweep] section with axis and values.
SweepSpec to_sweep_spec(const ParsedConfig& config);

} // namespace aoapla::cli
