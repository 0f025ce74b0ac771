// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/bounds.hpp"

#include <cmath>
#include <complex>

namespace aoapla::bounds {

using model::cplx;

namespace {

void check_noise_and_snapshots(double sigma2, int snapshots, const char* what) {
    if (!(sigma2 > 0.0))
        throw std::domain_error(std::string(what) + ": noise variance must be positive");
    if (snapshots < 1)
        throw std::domain_error(std::string(what) + ": at least one snapshot is required");
}

// Z1 = sum_l q_l S1(r_l), Z2 = sum_l q_l S2(r_l) with
// r_l = e^{j kappa (sin theta - sin theta_l)}.
struct WeightedSums {
    cplx z1;
    cplx z2;
};

WeightedSums weighted_sums(const model::UlaGeometry& geom,
                           const model::SpooferConfig& spoofer, double theta,
                           bool need_z2) {
    WeightedSums out{{0.0, 0.0}, {0.0, 0.0}};
    const double st = std::sin(theta);
    for (int l = 0; l < spoofer.num_antennas(); ++l) {
        const auto idx = static_cast<std::size_t>(l);
        const double psi = geom.kappa() * (st - std::sin(spoofer.angles[idx]));
        const cplx r = std::polar(1.0, psi);
        out.z1 += spoofer.weights[idx] * model::weighted_geom_sum_1(r, geom.num_elements);
        if (need_z2)
            out.z2 += spoofer.weights[idx] * model::weighted_geom_sum_2(r, geom.num_elements);
    }
    return out;
}

double check_curvature(double d, double gam) {
    if (std::abs(d) <= 1e-12 * gam)
        throw DegenerateCurvatureError(
            "mismatch curvature D is numerically zero relative to Gamma; "
            "the asymptotic variance is undefined at this angle");
    return d;
}

} // namespace

double crb(const model::UlaGeometry& geom, double theta, double sigma2, int snapshots) {
    check_noise_and_snapshots(sigma2, snapshots, "crb");
    return sigma2 / (2.0 * snapshots * model::gamma(geom, theta));
}

double eta(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
           double theta) {
    const WeightedSums s = weighted_sums(geom, spoofer, theta, false);
    return -geom.kappa() * std::cos(theta) * s.z1.imag();
}

double d_curvature(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
                   double theta) {
    return mismatch_curvature(geom, spoofer, theta).d_curv;
}

MismatchCurvature mismatch_curvature(const model::UlaGeometry& geom,
                                     const model::SpooferConfig& spoofer, double theta) {
    const WeightedSums s = weighted_sums(geom, spoofer, theta, true);
    const double kappa = geom.kappa();
    const double kc = kappa * std::cos(theta);
    MismatchCurvature out;
    out.theta = theta;
    out.gamma = model::gamma(geom, theta);
    out.eta = -kc * s.z1.imag();
    out.d_curv = -kappa * std::sin(theta) * s.z1.imag() + kc * kc * s.z2.real();
    return out;
}

PseudoTrueResult pseudo_true(const model::UlaGeometry& geom,
                             const model::SpooferConfig& spoofer,
                             const search::SearchSettings& settings) {
    const Eigen::VectorXcd s = model::spoofed_mean(geom, spoofer);
    const int m = geom.num_elements;

    const auto surrogate = [&](double theta) {
        return model::steering_correlation(geom, theta, s);
    };

    const search::LineSearchResult res = search::maximize_scalar(surrogate, settings);

    PseudoTrueResult out;
    out.theta0 = res.x;
    out.converged = res.converged && !res.at_guard;
    out.multimodal = res.multimodal;
    out.objective = s.squaredNorm() - 2.0 * res.value + m;
    out.eta_at_theta0 = eta(geom, spoofer, out.theta0);
    return out;
}

double mcrb_general(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
                    double theta, double sigma2, int snapshots) {
    check_noise_and_snapshots(sigma2, snapshots, "mcrb_general");
    const MismatchCurvature mc = mismatch_curvature(geom, spoofer, theta);
    const double d = check_curvature(mc.d_curv, mc.gamma);
    const double ratio = mc.eta / d;
    return (sigma2 / (2.0 * snapshots)) * mc.gamma / (d * d) + ratio * ratio;
}

BoundReport mcrb_at_pseudo_true(const model::UlaGeometry& geom,
                                const model::SpooferConfig& spoofer, double sigma2,
                                int snapshots, const search::SearchSettings& settings) {
    check_noise_and_snapshots(sigma2, snapshots, "mcrb_at_pseudo_true");
    PseudoTrueResult pt = pseudo_true(geom, spoofer, settings);
    if (!pt.converged)
        throw std::runtime_error("mcrb_at_pseudo_true: pseudo-true search did not converge");

    const MismatchCurvature mc = mismatch_curvature(geom, spoofer, pt.theta0);
    const double d = check_curvature(mc.d_curv, mc.gamma);

    BoundReport report;
    report.pseudo = pt;
    report.crb_k = sigma2 / (2.0 * snapshots * mc.gamma);
    const double ratio = mc.gamma / d;
    report.mcrb_k = ratio * ratio * report.crb_k;
    const double fisher_scale = 2.0 * snapshots / sigma2;
    report.a_scalar = fisher_scale * d;
    report.b_scalar = fisher_scale * mc.gamma +
                      (fisher_scale * mc.eta) * (fisher_scale * mc.eta);
    return report;
}

} // namespace aoapla::bounds
