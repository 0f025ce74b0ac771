// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/authtest.hpp"

#include "aoapla/normal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoapla::auth {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha must lie strictly in (0, 1)");
}

double clamp01(double p) {
    return std::min(1.0, std::max(0.0, p));
}

} // namespace

TestDesign TestDesign::wald(double alpha, double crb_k) {
    return {alpha, threshold(alpha, crb_k), crb_k, ThresholdSource::analytic_wald};
}

TestDesign TestDesign::calibrated(double tau, double crb_k, double alpha) {
    if (!(tau > 0.0))
        throw std::domain_error("TestDesign: calibrated threshold must be positive");
    return {alpha, tau, crb_k, ThresholdSource::monte_carlo_calibrated};
}

ErrorProbabilities::ErrorProbabilities(double p_fa_, double p_md_, double delta_)
    : p_fa(p_fa_), p_md(p_md_), p_sd(1.0 - p_md_), p_d(1.0 - p_fa_), delta(delta_) {
    if (!(p_fa >= 0.0 && p_fa <= 1.0) || !(p_md >= 0.0 && p_md <= 1.0))
        throw std::domain_error("ErrorProbabilities: probabilities must lie in [0, 1]");
}

double threshold(double alpha, double crb_k) {
    check_alpha(alpha);
    if (!(crb_k > 0.0))
        throw std::domain_error("threshold: crb_k must be positive");
    return std::sqrt(crb_k) * normal_two_sided_quantile(alpha);
}

double p_fa(double tau, double crb_k) {
    if (!(tau >= 0.0))
        throw std::domain_error("p_fa: tau must be nonnegative");
    if (!(crb_k > 0.0))
        throw std::domain_error("p_fa: crb_k must be positive");
    return clamp01(2.0 * normal_sf(tau / std::sqrt(crb_k)));
}

double p_md(double tau, double delta, double mcrb_k) {
    if (!(tau >= 0.0))
        throw std::domain_error("p_md: tau must be nonnegative");
    if (!(mcrb_k > 0.0))
        throw std::domain_error("p_md: mcrb_k must be positive");

    const double d = std::abs(delta);  // the mass is even in delta
    const double s = std::sqrt(mcrb_k);
    const double z_hi = (tau - d) / s;
    const double z_lo = (-tau - d) / s;

    double mass;
    if (z_lo > 0.0)
        mass = normal_sf(z_lo) - normal_sf(z_hi);
    else if (z_hi < 0.0)
        mass = normal_cdf(z_hi) - normal_cdf(z_lo);
    else
        mass = 1.0 - (normal_sf(z_hi) + normal_cdf(z_lo));
    return clamp01(mass);
}

double asymptotic_pmd_limit(double alpha, double crb1, double mcrb1) {
    check_alpha(alpha);
    if (!(crb1 > 0.0) || !(mcrb1 > 0.0))
        throw std::domain_error("asymptotic_pmd_limit: bounds must be positive");
    const double z = normal_two_sided_quantile(alpha) * std::sqrt(crb1 / mcrb1);
    return clamp01(2.0 * normal_cdf(z) - 1.0);
}

std::optional<double> critical_sigma(double delta, double tau) {
    if (!(tau > 0.0))
        throw std::domain_error("critical_sigma: tau must be positive");
    const double d = std::abs(delta);
    if (d <= tau)
        return std::nullopt;
    const double variance = 2.0 * d * tau / std::log((d + tau) / (d - tau));
    return std::sqrt(variance);
}

namespace {

AnalyticReport assemble(const model::UlaGeometry& geom, double theta_u,
                        const model::SpooferConfig& spoofer, double sigma2,
                        int snapshots, TestDesign design, bool p_fa_is_alpha,
                        const search::SearchSettings& settings) {
    const bounds::BoundReport bound =
        bounds::mcrb_at_pseudo_true(geom, spoofer, sigma2, snapshots, settings);

    const double delta = bound.pseudo.theta0 - theta_u;
    const double wald_fa = p_fa(design.tau, design.crb_k);
    const double md = p_md(design.tau, delta, bound.mcrb_k);

    AnalyticReport report{design.crb_k,
                          bound.mcrb_k,
                          bound.pseudo.theta0,
                          delta,
                          design,
                          ErrorProbabilities(p_fa_is_alpha ? design.alpha : wald_fa, md, delta),
                          wald_fa,
                          bound.pseudo};
    return report;
}

} // namespace

AnalyticReport analytic_report(const model::UlaGeometry& geom, double theta_u,
                               const model::SpooferConfig& spoofer, double sigma2,
                               int snapshots, double alpha,
                               const search::SearchSettings& settings) {
    check_alpha(alpha);
    const double crb_u = bounds::crb(geom, theta_u, sigma2, snapshots);
    return assemble(geom, theta_u, spoofer, sigma2, snapshots,
                    TestDesign::wald(alpha, crb_u), true, settings);
}

AnalyticReport analytic_report(const model::UlaGeometry& geom, double theta_u,
                               const model::SpooferConfig& spoofer, double sigma2,
                               int snapshots, const TestDesign& design,
                               const search::SearchSettings& settings) {
    return assemble(geom, theta_u, spoofer, sigma2, snapshots, design,
                    design.source == ThresholdSource::analytic_wald, settings);
}

} // namespace aoapla::auth
