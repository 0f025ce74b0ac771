// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/signal_model.hpp"

#include "aoapla/angles.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aoapla::model {

namespace {

void check_aoa(double theta, const char* what) {
    if (!(std::abs(theta) < pi / 2.0))
        throw std::domain_error(std::string(what) + ": angle must lie strictly inside (-pi/2, pi/2)");
}

// r^n by binary powering; keeps the phase error O(log n) rounding steps
// instead of the O(n) amplification of the exp(n log r) route.
cplx ipow(cplx r, int n) {
    cplx acc{1.0, 0.0};
    cplx base = r;
    for (unsigned k = static_cast<unsigned>(n); k != 0; k >>= 1) {
        if (k & 1u)
            acc *= base;
        base *= base;
    }
    return acc;
}

} // namespace

UlaGeometry::UlaGeometry(int num_elements_, double spacing_ratio_)
    : num_elements(num_elements_), spacing_ratio(spacing_ratio_) {
    if (num_elements < 2)
        throw std::domain_error("UlaGeometry: at least two elements are required");
    if (!(spacing_ratio > 0.0))
        throw std::domain_error("UlaGeometry: spacing ratio d/lambda must be positive");
}

UlaGeometry UlaGeometry::half_wavelength(int num_elements) {
    return UlaGeometry(num_elements, 0.5);
}

double UlaGeometry::kappa() const noexcept {
    return 2.0 * pi * spacing_ratio;
}

LegitimateSource::LegitimateSource(double aoa_rad) : aoa(aoa_rad) {
    check_aoa(aoa, "LegitimateSource");
}

SpooferConfig::SpooferConfig(std::vector<double> angles_rad, std::vector<cplx> weights_)
    : angles(std::move(angles_rad)), weights(std::move(weights_)) {
    if (angles.empty())
        throw std::invalid_argument("SpooferConfig: at least one spoofer antenna is required");
    if (angles.size() != weights.size())
        throw std::invalid_argument("SpooferConfig: angles and weights must have equal length");
    for (double th : angles)
        check_aoa(th, "SpooferConfig");
}

SpooferConfig SpooferConfig::normalized(std::vector<double> angles_rad,
                                        std::vector<cplx> weights) {
    SpooferConfig cfg(std::move(angles_rad), std::move(weights));
    if (std::abs(cfg.weight_magnitude_sum() - 1.0) > 1e-12)
        throw std::invalid_argument("SpooferConfig: weight magnitudes must sum to 1 within 1e-12");
    return cfg;
}

SpooferConfig SpooferConfig::co_linear(int num_antennas, double angle_rad) {
    if (num_antennas < 1)
        throw std::invalid_argument("SpooferConfig: at least one spoofer antenna is required");
    std::vector<double> angles(static_cast<std::size_t>(num_antennas), angle_rad);
    std::vector<cplx> weights(static_cast<std::size_t>(num_antennas),
                              cplx{1.0 / num_antennas, 0.0});
    return SpooferConfig(std::move(angles), std::move(weights));
}

double SpooferConfig::weight_magnitude_sum() const noexcept {
    double sum = 0.0;
    for (const cplx& q : weights)
        sum += std::abs(q);
    return sum;
}

Eigen::VectorXcd steering(const UlaGeometry& geom, double theta) {
    check_aoa(theta, "steering");
    const double phase = -geom.kappa() * std::sin(theta);
    Eigen::VectorXcd a(geom.num_elements);
    for (int m = 0; m < geom.num_elements; ++m)
        a[m] = std::polar(1.0, phase * m);
    return a;
}

Eigen::VectorXcd steering_d1(const UlaGeometry& geom, double theta) {
    const double scale = geom.kappa() * std::cos(theta);
    Eigen::VectorXcd d1 = steering(geom, theta);
    for (int m = 0; m < geom.num_elements; ++m)
        d1[m] *= cplx{0.0, -scale * m};
    return d1;
}

Eigen::VectorXcd steering_d2(const UlaGeometry& geom, double theta) {
    const double kc = geom.kappa() * std::cos(theta);
    const double ks = geom.kappa() * std::sin(theta);
    Eigen::VectorXcd d2 = steering(geom, theta);
    for (int m = 0; m < geom.num_elements; ++m)
        d2[m] *= cplx{-kc * kc * m * static_cast<double>(m), ks * m};
    return d2;
}

double gamma(const UlaGeometry& geom, double theta) {
    check_aoa(theta, "gamma");
    const double M = geom.num_elements;
    const double kc = geom.kappa() * std::cos(theta);
    return kc * kc * (M - 1.0) * M * (2.0 * M - 1.0) / 6.0;
}

cplx weighted_geom_sum_1(cplx r, int num_terms) {
    if (num_terms < 1)
        throw std::domain_error("weighted_geom_sum_1: need at least one term");
    const double M = num_terms;
    if (r == cplx{1.0, 0.0})
        return cplx{M * (M - 1.0) / 2.0, 0.0};
    if (std::abs(cplx{1.0, 0.0} - r) < 0.5) {
        cplx sum{0.0, 0.0};
        cplx rm = r;
        for (int m = 1; m < num_terms; ++m, rm *= r)
            sum += static_cast<double>(m) * rm;
        return sum;
    }
    const cplx one{1.0, 0.0};
    const cplx rm1 = ipow(r, num_terms - 1);
    const cplx rm = rm1 * r;
    const cplx den = (one - r) * (one - r);
    return r * (one - M * rm1 + (M - 1.0) * rm) / den;
}

cplx weighted_geom_sum_2(cplx r, int num_terms) {
    if (num_terms < 1)
        throw std::domain_error("weighted_geom_sum_2: need at least one term");
    const double M = num_terms;
    if (r == cplx{1.0, 0.0})
        return cplx{(M - 1.0) * M * (2.0 * M - 1.0) / 6.0, 0.0};
    if (std::abs(cplx{1.0, 0.0} - r) < 0.5) {
        cplx sum{0.0, 0.0};
        cplx rm = r;
        for (int m = 1; m < num_terms; ++m, rm *= r)
            sum += static_cast<double>(m) * static_cast<double>(m) * rm;
        return sum;
    }
    const cplx one{1.0, 0.0};
    const cplx rm1 = ipow(r, num_terms - 1);
    const cplx rm = rm1 * r;
    const cplx rp1 = rm * r;
    const cplx den = (one - r) * (one - r) * (one - r);
    return r *
           (one + r - M * M * rm1 + (2.0 * M * M - 2.0 * M - 1.0) * rm -
            (M - 1.0) * (M - 1.0) * rp1) /
           den;
}

Eigen::VectorXcd spoofed_mean(const UlaGeometry& geom, const SpooferConfig& spoofer) {
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(geom.num_elements);
    for (int l = 0; l < spoofer.num_antennas(); ++l)
        s += spoofer.weights[static_cast<std::size_t>(l)] *
             steering(geom, spoofer.angles[static_cast<std::size_t>(l)]);
    return s;
}

Eigen::VectorXcd mismatch_vector(const UlaGeometry& geom, const SpooferConfig& spoofer,
                                 double theta) {
    return spoofed_mean(geom, spoofer) - steering(geom, theta);
}

double steering_correlation(const UlaGeometry& geom, double theta,
                            const Eigen::VectorXcd& v) {
    const double phase = -geom.kappa() * std::sin(theta);
    const double wr = std::cos(phase);
    const double wi = std::sin(phase);
    double ur = 1.0, ui = 0.0;
    double acc = v[0].real();
    for (int m = 1; m < geom.num_elements; ++m) {
        const double nr = ur * wr - ui * wi;
        ui = ur * wi + ui * wr;
        ur = nr;
        acc += ur * v[m].real() + ui * v[m].imag();
    }
    return acc;
}

double steering_correlation_split(const UlaGeometry& geom, double theta,
                                  const double* re, const double* im) {
    const double phase = -geom.kappa() * std::sin(theta);
    const double wr = std::cos(phase);
    const double wi = std::sin(phase);
    double ur = 1.0, ui = 0.0;
    double acc = re[0];
    for (int m = 1; m < geom.num_elements; ++m) {
        const double nr = ur * wr - ui * wi;
        ui = ur * wi + ui * wr;
        ur = nr;
        acc += ur * re[m] + ui * im[m];
    }
    return acc;
}

} // namespace aoapla::model
