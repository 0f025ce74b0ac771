// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace aoapla::cli {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    double runtime_seconds = 0.0;

    bool all_passed() const noexcept;
};

// Cross-checks the closed forms against independent oracles: direct
// summation for the weighted geometric sums, explicit inner products and
// finite differences for the mismatch derivatives, a dense grid scan for
// the pseudo-true angle, threshold/false-alarm inversion, and short
// Monte Carlo variance tracking runs. inject_s1_fault is a documented test
// hook that perturbs the library S1 value by 1e-6 before comparison, so the
// harness can demonstrate that a broken sum is actually caught.
ValidationReport run_validation(bool inject_s1_fault = false);

std::string render_validation_text(const ValidationReport& report);

} // namespace aoapla::cli
