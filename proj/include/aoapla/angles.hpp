// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace aoapla {

inline constexpr double pi = std::numbers::pi;

constexpr double deg2rad(double deg) noexcept { return deg * (pi / 180.0); }
constexpr double rad2deg(double rad) noexcept { return rad * (180.0 / pi); }

// SNR is defined as 1/sigma^2 on a unit-power mean signal.
double snr_db_to_sigma2(double snr_db) noexcept;
double sigma2_to_snr_db(double sigma2);

} // namespace aoapla
