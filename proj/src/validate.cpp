// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/validate.hpp"

#include "aoapla/angles.hpp"
#include "aoapla/authtest.hpp"
#include "aoapla/bounds.hpp"
#include "aoapla/montecarlo.hpp"
#include "aoapla/signal_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <thread>

namespace aoapla::cli {

bool ValidationReport::all_passed() const noexcept {
    for (const ValidationCheck& check : checks)
        if (!check.passed)
            return false;
    return true;
}

namespace {

using model::cplx;

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
    char buf[192];
    std::snprintf(buf, sizeof buf, spec, a, b, c);
    return buf;
}

// Direct left-to-right sums of m r^m and m^2 r^m in extended precision.
void direct_weighted_sums(cplx r, int num_terms, cplx* s1, cplx* s2) {
    const std::complex<long double> rl(r.real(), r.imag());
    std::complex<long double> power = rl;
    std::complex<long double> acc1 = 0.0L;
    std::complex<long double> acc2 = 0.0L;
    for (int m = 1; m < num_terms; ++m) {
        acc1 += static_cast<long double>(m) * power;
        acc2 += static_cast<long double>(m) * static_cast<long double>(m) * power;
        power *= rl;
    }
    *s1 = cplx(static_cast<double>(acc1.real()), static_cast<double>(acc1.imag()));
    *s2 = cplx(static_cast<double>(acc2.real()), static_cast<double>(acc2.imag()));
}

void check_weighted_sums(std::vector<ValidationCheck>& checks, bool inject_s1_fault) {
    const int terms[] = {2, 3, 5, 8, 16, 32, 64, 128};
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> angle(-pi, pi);

    double worst1 = 0.0;
    double worst2 = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        const cplx r = std::polar(1.0, angle(gen));
        for (int m : terms) {
            cplx ref1, ref2;
            direct_weighted_sums(r, m, &ref1, &ref2);
            cplx lib1 = model::weighted_geom_sum_1(r, m);
            const cplx lib2 = model::weighted_geom_sum_2(r, m);
            if (inject_s1_fault)
                lib1 += cplx(1e-6, 0.0);
            const double scale1 = 1.0 + std::abs(ref1);
            const double scale2 = 1.0 + std::abs(ref2);
            worst1 = std::max(worst1, std::abs(lib1 - ref1) / scale1);
            worst2 = std::max(worst2, std::abs(lib2 - ref2) / scale2);
        }
    }
    checks.push_back({"s1-closed-form", worst1 <= 1e-9,
                      fmt("max scaled error %.3g vs direct summation (tol 1e-9)", worst1)});
    checks.push_back({"s2-closed-form", worst2 <= 1e-9,
                      fmt("max scaled error %.3g vs direct summation (tol 1e-9)", worst2)});
}

struct DerivativeCase {
    model::UlaGeometry geom;
    model::SpooferConfig spoofer;
    std::vector<double> thetas;
};

std::vector<DerivativeCase> derivative_cases() {
    std::vector<DerivativeCase> cases;
    cases.push_back({model::UlaGeometry::half_wavelength(16),
                     model::SpooferConfig::co_linear(1, deg2rad(25.0)),
                     {deg2rad(-40.0), deg2rad(-10.0), deg2rad(5.0), deg2rad(40.0)}});
    cases.push_back(
        {model::UlaGeometry::half_wavelength(8),
         model::SpooferConfig::normalized({deg2rad(20.0), deg2rad(-35.0)},
                                          {cplx(0.7, 0.0), std::polar(0.3, 1.1)}),
         {deg2rad(-15.0), deg2rad(6.0), deg2rad(33.0)}});
    return cases;
}

void check_inner_products(std::vector<ValidationCheck>& checks) {
    double worst_eta = 0.0;
    double worst_d = 0.0;
    for (const DerivativeCase& c : derivative_cases()) {
        for (double theta : c.thetas) {
            const Eigen::VectorXcd delta = model::mismatch_vector(c.geom, c.spoofer, theta);
            const Eigen::VectorXcd d1 = model::steering_d1(c.geom, theta);
            const Eigen::VectorXcd d2 = model::steering_d2(c.geom, theta);
            const double eta_ref = d1.dot(delta).real();
            const double d_ref = model::gamma(c.geom, theta) - d2.dot(delta).real();
            const double scale = 1.0 + model::gamma(c.geom, theta);
            worst_eta = std::max(
                worst_eta, std::abs(bounds::eta(c.geom, c.spoofer, theta) - eta_ref) / scale);
            worst_d = std::max(
                worst_d,
                std::abs(bounds::d_curvature(c.geom, c.spoofer, theta) - d_ref) / scale);
        }
    }
    checks.push_back(
        {"mismatch-inner-product", worst_eta <= 1e-8 && worst_d <= 1e-8,
         fmt("max scaled error eta %.3g, curvature %.3g vs explicit inner products (tol 1e-8)",
             worst_eta, worst_d)});
}

void check_finite_differences(std::vector<ValidationCheck>& checks) {
    double worst_eta = 0.0;
    double worst_d = 0.0;
    for (const DerivativeCase& c : derivative_cases()) {
        const auto objective = [&](double theta) {
            return model::mismatch_vector(c.geom, c.spoofer, theta).squaredNorm();
        };
        for (double theta : c.thetas) {
            // eta = -f'/2 and D = f''/2 for f(theta) = ||s - a(theta)||^2.
            const double h1 = 1e-5;
            const double h2 = 5e-4;
            const double eta_fd = -(objective(theta + h1) - objective(theta - h1)) / (4.0 * h1);
            const double d_fd = (objective(theta + h2) - 2.0 * objective(theta) +
                                 objective(theta - h2)) /
                                (2.0 * h2 * h2);
            const double scale = 1.0 + model::gamma(c.geom, theta);
            worst_eta = std::max(
                worst_eta, std::abs(bounds::eta(c.geom, c.spoofer, theta) - eta_fd) / scale);
            worst_d = std::max(
                worst_d, std::abs(bounds::d_curvature(c.geom, c.spoofer, theta) - d_fd) / scale);
        }
    }
    checks.push_back(
        {"mismatch-finite-difference", worst_eta <= 1e-4 && worst_d <= 1e-4,
         fmt("max scaled error eta %.3g, curvature %.3g vs central differences (tol 1e-4)",
             worst_eta, worst_d)});
}

double brute_force_pseudo_true(const model::UlaGeometry& geom,
                               const model::SpooferConfig& spoofer) {
    const Eigen::VectorXcd s = model::spoofed_mean(geom, spoofer);
    const double guard = deg2rad(0.1);
    const double lo = -pi / 2 + guard;
    const double hi = pi / 2 - guard;
    const int points = 1000001;
    const double step = (hi - lo) / (points - 1);
    double best = -1e300;
    int best_index = 0;
    for (int i = 0; i < points; ++i) {
        const double value = model::steering_correlation(geom, lo + step * i, s);
        if (value > best) {
            best = value;
            best_index = i;
        }
    }
    if (best_index == 0 || best_index == points - 1)
        return lo + step * best_index;
    // One parabolic refinement through the winning grid point and neighbors.
    const double fl = model::steering_correlation(geom, lo + step * (best_index - 1), s);
    const double fr = model::steering_correlation(geom, lo + step * (best_index + 1), s);
    const double denom = fl - 2.0 * best + fr;
    double offset = 0.0;
    if (denom < 0.0)
        offset = 0.5 * step * (fl - fr) / denom;
    return lo + step * best_index + offset;
}

void check_pseudo_true_scan(std::vector<ValidationCheck>& checks) {
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
        {model::UlaGeometry::half_wavelength(32),
         model::SpooferConfig::normalized({deg2rad(9.0), deg2rad(14.0)},
                                          {std::polar(0.55, -0.4), std::polar(0.45, 0.9)})},
    };
    double worst = 0.0;
    for (const Case& c : cases) {
        const double ref = brute_force_pseudo_true(c.geom, c.spoofer);
        const bounds::PseudoTrueResult res = bounds::pseudo_true(c.geom, c.spoofer);
        worst = std::max(worst, std::abs(res.theta0 - ref));
    }
    checks.push_back({"pseudo-true-grid-scan", worst <= 1e-7,
                      fmt("max |theta0 - dense-scan| %.3g rad (tol 1e-7)", worst)});
}

void check_threshold_inverse(std::vector<ValidationCheck>& checks) {
    const double alphas[] = {1e-6, 1e-5, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.3, 0.5, 0.9};
    const double crbs[] = {1.7e-3, 0.0506605918211689, 2.3};
    double worst = 0.0;
    for (double alpha : alphas) {
        for (double crb_k : crbs) {
            const double tau = auth::threshold(alpha, crb_k);
            worst = std::max(worst, std::abs(auth::p_fa(tau, crb_k) - alpha) / alpha);
        }
    }
    checks.push_back({"threshold-inverse-pair", worst <= 1e-10,
                      fmt("max relative round-trip error %.3g (tol 1e-10)", worst)});
}

void check_variance_tracking(std::vector<ValidationCheck>& checks, int workers) {
    mc::Scenario sc;
    sc.geometry = model::UlaGeometry::half_wavelength(16);
    sc.theta_u = deg2rad(10.0);
    sc.sigma2 = snr_db_to_sigma2(15.0);
    sc.snapshots = 20;
    sc.trials = 2000;
    sc.seed = 424242;

    const mc::SimulatedEstimates h0 = mc::simulate_estimates(sc, mc::Hypothesis::h0, workers);
    double mean = 0.0;
    for (double t : h0.theta_hat)
        mean += t;
    mean /= static_cast<double>(h0.theta_hat.size());
    double var = 0.0;
    for (double t : h0.theta_hat)
        var += (t - mean) * (t - mean);
    var /= static_cast<double>(h0.theta_hat.size() - 1);
    const double crb_k = bounds::crb(sc.geometry, sc.theta_u, sc.sigma2, sc.snapshots);
    const double ratio_h0 = var / crb_k;

    sc.spoofer = model::SpooferConfig::co_linear(1, sc.theta_u + deg2rad(2.0));
    const auth::AnalyticReport report =
        auth::analytic_report(sc.geometry, sc.theta_u, *sc.spoofer, sc.sigma2, sc.snapshots,
                              sc.alpha);
    const mc::SimulatedEstimates h1 = mc::simulate_estimates(sc, mc::Hypothesis::h1, workers);
    double mean1 = 0.0;
    for (double t : h1.theta_hat)
        mean1 += t;
    mean1 /= static_cast<double>(h1.theta_hat.size());
    double var1 = 0.0;
    for (double t : h1.theta_hat)
        var1 += (t - mean1) * (t - mean1);
    var1 /= static_cast<double>(h1.theta_hat.size() - 1);
    const double ratio_h1 = var1 / report.mcrb_k;
    const double mean_gap =
        std::abs(mean1 - report.theta0) /
        std::sqrt(report.mcrb_k / static_cast<double>(h1.theta_hat.size()));

    const bool ok = ratio_h0 >= 1.0 / 1.3 && ratio_h0 <= 1.3 && ratio_h1 >= 1.0 / 1.3 &&
                    ratio_h1 <= 1.3 && mean_gap <= 4.0;
    checks.push_back(
        {"estimator-variance-tracking", ok,
         fmt("variance/bound ratios %.3f (null) and %.3f (spoofed), pseudo-true mean gap "
             "%.2f standard errors (2000 trials)",
             ratio_h0, ratio_h1, mean_gap)});
}

} // namespace

ValidationReport run_validation(bool inject_s1_fault) {
    const auto start = std::chrono::steady_clock::now();
    ValidationReport report;
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));

    check_weighted_sums(report.checks, inject_s1_fault);
    check_inner_products(report.checks);
    check_finite_differences(report.checks);
    check_pseudo_true_scan(report.checks);
    check_threshold_inverse(report.checks);
    check_variance_tracking(report.checks, workers);

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.runtime_seconds = elapsed.count();

    // Budget: 10 minutes of 4-core machine time, scaled to this machine.
    const double cores = hw == 0 ? 1.0 : static_cast<double>(hw);
    const double budget = 600.0 * 4.0 / cores;
    ValidationCheck runtime;
    runtime.name = "runtime-budget";
    runtime.passed = true;
    if (report.runtime_seconds <= budget) {
        runtime.detail = fmt("%.1f s of %.0f s budget on this machine", report.runtime_seconds,
                             budget);
    } else {
        runtime.detail = fmt("warning: %.1f s exceeds the %.0f s budget on this machine",
                             report.runtime_seconds, budget);
    }
    report.checks.push_back(std::move(runtime));
    return report;
}

std::string render_validation_text(const ValidationReport& report) {
    std::string out;
    int passed = 0;
    for (const ValidationCheck& check : report.checks) {
        out += check.passed ? "[PASS] " : "[FAIL] ";
        out += check.name;
        out += ": ";
        out += check.detail;
        out += '\n';
        passed += check.passed ? 1 : 0;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%zu checks passed in %.1f s\n", passed,
                  report.checks.size(), report.runtime_seconds);
    out += buf;
    return out;
}

} // namespace aoapla::cli
