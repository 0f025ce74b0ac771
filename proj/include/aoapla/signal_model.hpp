// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace aoapla::model {

using cplx = std::complex<double>;

// Uniform linear array with element index m = 0..M-1. The wavenumber
// kappa = 2*pi*(d/lambda) is derived, never stored.
struct UlaGeometry {
    UlaGeometry(int num_elements, double spacing_ratio);
    static UlaGeometry half_wavelength(int num_elements);

    int num_elements;
    double spacing_ratio;

    double kappa() const noexcept;
};

// Single-antenna legitimate transmitter with the normalized unit gain model;
// only the angle of arrival is free.
struct LegitimateSource {
    explicit LegitimateSource(double aoa_rad);

    double aoa;
    static constexpr cplx gain{1.0, 0.0};
};

// L-antenna spoofer: per-antenna arrival angles and complex weights
// q = beta * e^{j phi}. The benchmark normalization sum |q| = 1 is available
// as a checked factory.
struct SpooferConfig {
    SpooferConfig(std::vector<double> angles_rad, std::vector<cplx> weights);
    static SpooferConfig normalized(std::vector<double> angles_rad,
                                    std::vector<cplx> weights);
    // Co-linear benchmark: L antennas at one angle, equal real gains 1/L.
    static SpooferConfig co_linear(int num_antennas, double angle_rad);

    std::vector<double> angles;
    std::vector<cplx> weights;

    int num_antennas() const noexcept { return static_cast<int>(angles.size()); }
    double weight_magnitude_sum() const noexcept;
};

// Steering vector a(theta), entries e^{-j kappa m sin theta}, and its first
// two derivatives in theta.
Eigen::VectorXcd steering(const UlaGeometry& geom, double theta);
Eigen::VectorXcd steering_d1(const UlaGeometry& geom, double theta);
Eigen::VectorXcd steering_d2(const UlaGeometry& geom, double theta);

// ||d a / d theta||^2 = kappa^2 cos^2(theta) (M-1)M(2M-1)/6.
double gamma(const UlaGeometry& geom, double theta);

// Weighted geometric sums S1 = sum m r^m and S2 = sum m^2 r^m over
// m = 0..M-1. Closed forms away from r = 1; inside |1 - r| < 0.5 the sums
// are evaluated directly, since the closed-form numerators cancel to
// O(|1-r|^3) and lose absolute accuracy long before 1e-6.
cplx weighted_geom_sum_1(cplx r, int num_terms);
cplx weighted_geom_sum_2(cplx r, int num_terms);

// Spoofed mean s = sum_l q_l a(theta_l) and mismatch Delta(theta) = s - a(theta).
Eigen::VectorXcd spoofed_mean(const UlaGeometry& geom, const SpooferConfig& spoofer);
Eigen::VectorXcd mismatch_vector(const UlaGeometry& geom, const SpooferConfig& spoofer,
                                 double theta);

// Re{a(theta)^H v}, accumulated with a phase-rotation recurrence so a single
// trig call serves all M elements. This is the line-search objective of both
// the pseudo-true solver and the AoA estimator.
double steering_correlation(const UlaGeometry& geom, double theta,
                            const Eigen::VectorXcd& v);

// Same sum over split real/imaginary arrays of length geom.num_elements.
double steering_correlation_split(const UlaGeometry& geom, double theta,
                                  const double* re, const double* im);

} // namespace aoapla::model
