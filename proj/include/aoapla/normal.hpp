// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace aoapla {

// Standard normal density, CDF, survival function and quantile.
//
// The CDF and its complement are evaluated through erfc so that both tails
// keep full relative accuracy down to the underflow limit; the quantile is a
// rational initial guess polished by Newton steps on the erfc form.
double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;      // Phi(x)
double normal_sf(double x) noexcept;       // Q(x) = 1 - Phi(x)
double normal_quantile(double p);          // Phi^{-1}(p), p in (0, 1)

// Phi^{-1}(1 - a/2) computed as -Phi^{-1}(a/2) to avoid forming 1 - a/2.
double normal_two_sided_quantile(double alpha);

} // namespace aoapla
