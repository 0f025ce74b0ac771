// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoapla/angles.hpp"
#include "aoapla/bounds.hpp"
#include "aoapla/signal_model.hpp"

#include <cmath>

using namespace aoapla;
using model::cplx;

namespace {

double objective(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
                 double theta) {
    return model::mismatch_vector(geom, spoofer, theta).squaredNorm();
}

} // namespace

TEST_CASE("single-snapshot broadside reference value") {
    // M = 2, d = lambda/2, theta = 0: Gamma = kappa^2 = pi^2, so the
    // one-snapshot bound at unit noise power is 1 / (2 pi^2).
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(2);
    CHECK(bounds::crb(geom, 0.0, 1.0, 1) ==
          doctest::Approx(0.050660591821168885).epsilon(1e-14));
}

TEST_CASE("bound scales linearly in noise power and inversely in snapshots") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(16);
    const double theta = deg2rad(10.0);
    const double base = bounds::crb(geom, theta, 1.0, 1);
    CHECK(bounds::crb(geom, theta, 2.0, 1) == doctest::Approx(2.0 * base).epsilon(1e-15));
    CHECK(bounds::crb(geom, theta, 1.0, 20) == doctest::Approx(base / 20.0).epsilon(1e-15));
    CHECK(bounds::crb(geom, theta, 0.25, 10) ==
          doctest::Approx(base * 0.025).epsilon(1e-14));

    CHECK_THROWS_AS(bounds::crb(geom, theta, 0.0, 1), std::domain_error);
    CHECK_THROWS_AS(bounds::crb(geom, theta, -1.0, 1), std::domain_error);
    CHECK_THROWS_AS(bounds::crb(geom, theta, 1.0, 0), std::domain_error);
}

TEST_CASE("score mean and curvature match finite differences of the distance") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(16);
    const model::SpooferConfig spoofer = model::SpooferConfig::co_linear(1, deg2rad(25.0));
    for (double theta : {deg2rad(-40.0), deg2rad(-10.0), deg2rad(5.0), deg2rad(40.0)}) {
        const double h1 = 1e-5;
        const double eta_fd =
            -(objective(geom, spoofer, theta + h1) - objective(geom, spoofer, theta - h1)) /
            (4.0 * h1);
        const double h2 = 5e-4;
        const double d_fd = (objective(geom, spoofer, theta + h2) -
                             2.0 * objective(geom, spoofer, theta) +
                             objective(geom, spoofer, theta - h2)) /
                            (2.0 * h2 * h2);
        const double scale = 1.0 + model::gamma(geom, theta);
        CHECK(std::abs(bounds::eta(geom, spoofer, theta) - eta_fd) < 1e-4 * scale);
        CHECK(std::abs(bounds::d_curvature(geom, spoofer, theta) - d_fd) < 1e-4 * scale);
    }
}

TEST_CASE("score mean and curvature match explicit inner products") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(8);
    const model::SpooferConfig spoofer = model::SpooferConfig::normalized(
        {deg2rad(20.0), deg2rad(-35.0)}, {cplx(0.7, 0.0), std::polar(0.3, 1.1)});
    for (double theta : {-0.9, -0.2, 0.15, 0.6}) {
        const Eigen::VectorXcd delta = model::mismatch_vector(geom, spoofer, theta);
        const double eta_ref = model::steering_d1(geom, theta).dot(delta).real();
        const double d_ref =
            model::gamma(geom, theta) - model::steering_d2(geom, theta).dot(delta).real();
        const double scale = 1.0 + model::gamma(geom, theta);
        CHECK(std::abs(bounds::eta(geom, spoofer, theta) - eta_ref) < 1e-8 * scale);
        CHECK(std::abs(bounds::d_curvature(geom, spoofer, theta) - d_ref) < 1e-8 * scale);

        const bounds::MismatchCurvature mc = bounds::mismatch_curvature(geom, spoofer, theta);
        CHECK(mc.eta == bounds::eta(geom, spoofer, theta));
        CHECK(mc.d_curv == bounds::d_curvature(geom, spoofer, theta));
        CHECK(mc.gamma == model::gamma(geom, theta));
        CHECK(mc.theta == theta);
    }
}

TEST_CASE("pseudo-true angle maximizes the correlation on a dense grid") {
    struct Case {
        model::UlaGeometry geom;
        model::SpooferConfig spoofer;
    };
    const Case cases[] = {
        {model::UlaGeometry::half_wavelength(16),
         model::SpooferConfig::co_linear(4, deg2rad(12.0))},
        {model::UlaGeometry::half_wavelength(8),
         model::SpooferConfig::normalized({deg2rad(20.0), deg2rad(-35.0)},
                                          {cplx(0.7, 0.0), std::polar(0.3, 1.1)})},
    };
    for (const Case& c : cases) {
        const Eigen::VectorXcd s = model::spoofed_mean(c.geom, c.spoofer);
        const double guard = deg2rad(0.1);
        const int points = 200001;
        const double lo = -pi / 2 + guard;
        const double step = (pi - 2 * guard) / (points - 1);
        double best = -1e300;
        int best_index = 0;
        for (int i = 0; i < points; ++i) {
            const double value = model::steering_correlation(c.geom, lo + step * i, s);
            if (value > best) {
                best = value;
                best_index = i;
            }
        }
        const double fl = model::steering_correlation(c.geom, lo + step * (best_index - 1), s);
        const double fr = model::steering_correlation(c.geom, lo + step * (best_index + 1), s);
        const double refined =
            lo + step * best_index + 0.5 * step * (fl - fr) / (fl - 2.0 * best + fr);

        const bounds::PseudoTrueResult res = bounds::pseudo_true(c.geom, c.spoofer);
        CHECK(res.converged);
        CHECK(std::abs(res.theta0 - refined) < 1e-7);
    }
}

TEST_CASE("pseudo-true point is stationary and matches a co-linear spoofer") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(16);
    const double angle = deg2rad(12.0);
    const bounds::PseudoTrueResult res =
        bounds::pseudo_true(geom, model::SpooferConfig::co_linear(4, angle));
    CHECK(res.converged);
    CHECK(std::abs(res.theta0 - angle) < 1e-8);
    CHECK(std::abs(res.eta_at_theta0) < 1e-6 * model::gamma(geom, angle));
    // || s - a(theta0) || = 0 when the spoofed mean is itself a steering vector.
    CHECK(res.objective < 1e-10);
}

TEST_CASE("mismatched bound at the pseudo-true angle") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(16);
    const model::SpooferConfig spoofer = model::SpooferConfig::normalized(
        {deg2rad(9.0), deg2rad(14.0)}, {std::polar(0.55, -0.4), std::polar(0.45, 0.9)});
    const double sigma2 = 0.5;
    const int snapshots = 20;
    const bounds::BoundReport report =
        bounds::mcrb_at_pseudo_true(geom, spoofer, sigma2, snapshots);

    // Sandwich identity B / A^2 at theta0.
    CHECK(report.mcrb_k ==
          doctest::Approx(report.b_scalar / (report.a_scalar * report.a_scalar))
              .epsilon(1e-10));
    // Same number through the general evaluator at theta0.
    CHECK(report.mcrb_k ==
          doctest::Approx(bounds::mcrb_general(geom, spoofer, report.pseudo.theta0, sigma2,
                                               snapshots))
              .epsilon(1e-12));
    // (Gamma / D)^2 scaling of the matched bound, using eta(theta0) ~ 0.
    const bounds::MismatchCurvature mc =
        bounds::mismatch_curvature(geom, spoofer, report.pseudo.theta0);
    const double ratio = mc.gamma / mc.d_curv;
    const double matched = bounds::crb(geom, report.pseudo.theta0, sigma2, snapshots);
    CHECK(report.mcrb_k == doctest::Approx(matched * ratio * ratio).epsilon(1e-6));

    CHECK(report.crb_k == doctest::Approx(matched).epsilon(1e-14));
}

TEST_CASE("general bound composes its published pieces") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(8);
    const model::SpooferConfig spoofer = model::SpooferConfig::co_linear(2, deg2rad(18.0));
    const double sigma2 = 0.8;
    const int snapshots = 5;
    for (double theta : {deg2rad(2.0), deg2rad(17.0), deg2rad(30.0)}) {
        const bounds::MismatchCurvature mc = bounds::mismatch_curvature(geom, spoofer, theta);
        const double expected = (sigma2 / (2.0 * snapshots)) * mc.gamma / (mc.d_curv * mc.d_curv) +
                                (mc.eta / mc.d_curv) * (mc.eta / mc.d_curv);
        CHECK(bounds::mcrb_general(geom, spoofer, theta, sigma2, snapshots) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("degenerate curvature is reported, not returned") {
    const model::UlaGeometry geom = model::UlaGeometry::half_wavelength(8);
    const model::SpooferConfig spoofer = model::SpooferConfig::co_linear(1, deg2rad(25.0));
    // D crosses zero between the pseudo-true peak and the far sidelobes;
    // bisect the crossing and evaluate exactly there.
    double lo = deg2rad(25.0);
    double hi = deg2rad(60.0);
    const double d_lo = bounds::d_curvature(geom, spoofer, lo);
    REQUIRE(d_lo > 0.0);
    REQUIRE(bounds::d_curvature(geom, spoofer, hi) * d_lo < 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (bounds::d_curvature(geom, spoofer, mid) * d_lo > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    CHECK_THROWS_AS(bounds::mcrb_general(geom, spoofer, root, 1.0, 1),
                    bounds::DegenerateCurvatureError);
}
