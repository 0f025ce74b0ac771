// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/angles.hpp"

#include <cmath>
#include <stdexcept>

namespace aoapla {

double snr_db_to_sigma2(double snr_db) noexcept {
    return std::pow(10.0, -snr_db / 10.0);
}

double sigma2_to_snr_db(double sigma2) {
    if (!(sigma2 > 0.0))
        throw std::domain_error("sigma2_to_snr_db: sigma2 must be positive");
    // + 0.0 folds the negative zero from log10(1) into plain zero.
    return -10.0 * std::log10(sigma2) + 0.0;
}

} // namespace aoapla
