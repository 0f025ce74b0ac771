// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/search.hpp"
#include "aoapla/signal_model.hpp"

#include <stdexcept>

namespace aoapla::bounds {

// eta = Re{a'(theta)^H Delta(theta)}: the score mean under mismatch.
// d_curv = Gamma(theta) - Re{a''(theta)^H Delta(theta)}: curvature of half
// the squared-distance objective. Both evaluated at the same angle.
struct MismatchCurvature {
    double eta;
    double d_curv;
    double gamma;
    double theta;
};

struct PseudoTrueResult {
    double theta0 = 0.0;
    double objective = 0.0;  // ||s - a(theta0)||^2
    double eta_at_theta0 = 0.0;
    bool converged = false;
    bool multimodal = false;  // tied global optima on the scan grid
};

struct BoundReport {
    double crb_k;      // evaluated at theta0
    double mcrb_k;     // evaluated at theta0
    double a_scalar;   // A(theta0) = (2K/sigma^2) D
    double b_scalar;   // B(theta0) = (2K/sigma^2) Gamma + ((2K/sigma^2) eta)^2
    PseudoTrueResult pseudo;
};

// |D(theta)| <= 1e-12 * Gamma(theta) leaves the asymptotic variance
// undefined; callers must handle this explicitly rather than receive an
// infinity that would silently poison the probability formulas.
class DegenerateCurvatureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// CRB for K snapshots at noise variance sigma2: sigma^2 / (2 K Gamma(theta)).
double crb(const model::UlaGeometry& geom, double theta, double sigma2, int snapshots);

double eta(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
           double theta);
double d_curvature(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
                   double theta);
MismatchCurvature mismatch_curvature(const model::UlaGeometry& geom,
                                     const model::SpooferConfig& spoofer, double theta);

// Global minimizer of ||s - a(theta)||^2 over the guarded open interval,
// equivalently argmax of Re{a(theta)^H s}; dense scan plus golden-section
// refinement, ties broken toward the smallest angle.
PseudoTrueResult pseudo_true(
    const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
    const search::SearchSettings& settings = search::SearchSettings::pseudo_true_defaults());

// MCRB_K(theta) = (sigma^2/2K) Gamma/D^2 + (eta/D)^2.
double mcrb_general(const model::UlaGeometry& geom, const model::SpooferConfig& spoofer,
                    double theta, double sigma2, int snapshots);

// MCRB_K(theta0) = (Gamma/D)^2 CRB_K(theta0), plus the sandwich scalars.
BoundReport mcrb_at_pseudo_true(
    const model::UlaGeometry& geom, const model::SpooferConfig& spoofer, double sigma2,
    int snapshots,
    const search::SearchSettings& settings = search::SearchSettings::pseudo_true_defaults());

} // namespace aoapla::bounds
