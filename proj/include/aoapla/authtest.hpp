// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/bounds.hpp"
#include "aoapla/signal_model.hpp"

#include <optional>

namespace aoapla::auth {

enum class ThresholdSource { analytic_wald, monte_carlo_calibrated };

// Acceptance radius tau for the two-sided test |theta_hat - theta_u| <= tau.
struct TestDesign {
    double alpha;
    double tau;
    double crb_k;
    ThresholdSource source;

    static TestDesign wald(double alpha, double crb_k);
    static TestDesign calibrated(double tau, double crb_k, double alpha);
};

// delta = theta0 - theta_u. p_sd and p_d are stored as exact complements of
// p_md and p_fa; the constructor enforces it.
struct ErrorProbabilities {
    ErrorProbabilities(double p_fa, double p_md, double delta);

    double p_fa;
    double p_md;
    double p_sd;
    double p_d;
    double delta;
};

// tau(alpha) = sqrt(crb_k) * Phi^{-1}(1 - alpha/2).
double threshold(double alpha, double crb_k);

// P_FA = 2 Q(tau / sqrt(crb_k)).
double p_fa(double tau, double crb_k);

// P_MD = Phi((tau - delta)/sqrt(mcrb_k)) - Phi((-tau - delta)/sqrt(mcrb_k)),
// evaluated on whichever tail is smaller so that P_SD -> 1 keeps relative
// accuracy down to the underflow limit. Even in delta.
double p_md(double tau, double delta, double mcrb_k);

// K -> infinity misdetection floor for delta = 0:
// 2 Phi(Phi^{-1}(1 - alpha/2) sqrt(crb1/mcrb1)) - 1.
double asymptotic_pmd_limit(double alpha, double crb1, double mcrb1);

// Estimator standard deviation minimizing P_SD at fixed (delta, tau):
// sigma*^2 = 2|delta| tau / ln((|delta| + tau)/(|delta| - tau)) for
// |delta| > tau; no interior minimum otherwise (P_SD is then increasing in
// the estimation variance).
std::optional<double> critical_sigma(double delta, double tau);

// Closed-form summary of one scenario point.
struct AnalyticReport {
    double crb_k;   // at theta_u
    double mcrb_k;  // at theta0
    double theta0;
    double delta;
    TestDesign design;
    ErrorProbabilities probs;
    double p_fa_wald;  // Wald approximation at the design threshold
    bounds::PseudoTrueResult pseudo;
};

AnalyticReport analytic_report(
    const model::UlaGeometry& geom, double theta_u, const model::SpooferConfig& spoofer,
    double sigma2, int snapshots, double alpha,
    const search::SearchSettings& settings = search::SearchSettings::pseudo_true_defaults());

// Same report under an externally calibrated threshold; p_fa is then the
// Wald approximation at that threshold rather than alpha by construction.
AnalyticReport analytic_report(
    const model::UlaGeometry& geom, double theta_u, const model::SpooferConfig& spoofer,
    double sigma2, int snapshots, const TestDesign& design,
    const search::SearchSettings& settings = search::SearchSettings::pseudo_true_defaults());

} // namespace aoapla::auth
