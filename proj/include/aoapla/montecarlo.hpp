// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/estimator.hpp"
#include "aoapla/philox.hpp"
#include "aoapla/search.hpp"
#include "aoapla/signal_model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace aoapla::mc {

enum class Hypothesis { h0, h1 };

enum class PhaseRedraw { per_trial, fixed };

// Uniform per-antenna spoofer phases on [-phi_max, +phi_max]. phi_max = 0
// reproduces the equal-gain benchmark exactly: the zero draw multiplies
// every weight by exactly one.
struct PhaseSpreadModel {
    double phi_max = 0.0;
    PhaseRedraw redraw = PhaseRedraw::per_trial;
};

// One simulated operating point. A scenario without a spoofer is an H0
// scenario (only the legitimate transmitter), one with a spoofer is H1.
struct Scenario {
    model::UlaGeometry geometry = model::UlaGeometry::half_wavelength(2);
    double theta_u = 0.0;
    double sigma2 = 1.0;  // linear SNR is 1/sigma2
    int snapshots = 1;
    double alpha = 1e-3;
    std::optional<model::SpooferConfig> spoofer;
    std::optional<PhaseSpreadModel> phase_spread;
    long long trials = 100000;
    std::uint64_t seed = 0;
    search::SearchSettings estimator_search = search::SearchSettings::estimator_defaults();

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Binomial point estimate with a Wilson score interval.
struct EmpiricalEstimate {
    long long successes = 0;
    long long trials = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double confidence = 0.0;

    static EmpiricalEstimate wilson(long long successes, long long trials,
                                    double confidence = 0.99);

    // Estimate of 1 - p with the interval reflected; exact complement by
    // construction.
    EmpiricalEstimate complement() const noexcept;

    bool contains(double p) const noexcept { return ci_low <= p && p <= ci_high; }
};

struct SimulatedEstimates {
    std::vector<double> theta_hat;  // one entry per trial, radians
    long long num_converged = 0;
};

// Outcome of one batch of decision trials. `exceed` estimates
// P(|theta_hat - theta_u| > tau): the false-alarm rate under H0, the
// successful-detection rate under H1.
struct TrialResults {
    Hypothesis hypothesis = Hypothesis::h0;
    double tau = 0.0;
    EmpiricalEstimate exceed;
    long long converged_trials = 0;
    double theta_mean = 0.0;
    double theta_var = 0.0;  // unbiased sample variance of theta_hat
};

// Spoofer phases consumed by one trial: zeros without a phase-spread model,
// the draw-0 fixed vector under PhaseRedraw::fixed, a fresh vector per trial
// otherwise. Requires a spoofer.
std::vector<double> spoofer_phases(const Scenario& scenario, long long trial_index);

// Indexed deterministic phase vectors from the fixed-draw stream; draw 0 is
// the vector the simulator reuses under PhaseRedraw::fixed. Used to average
// analytic curves over phase realizations.
std::vector<double> phase_draw(const Scenario& scenario, int draw_index);

// Noise-free snapshot mean: a(theta_u) under H0, the phased spoofer mixture
// under H1.
Eigen::VectorXcd trial_mean(const Scenario& scenario, Hypothesis hypothesis,
                            long long trial_index);

// K noisy snapshots for one trial. Noise is circular complex Gaussian with
// per-component variance sigma2/2, i.i.d. across antennas and snapshots;
// the stream is a pure function of (seed, trial_index, hypothesis tag), so
// batches are bit-identical across runs and worker counts.
est::SnapshotBatch generate_snapshots(const Scenario& scenario, Hypothesis hypothesis,
                                      long long trial_index);

// Runs the quasi-ML estimator over all trials. Trials are processed in
// fixed-size batches whose composition does not depend on the worker count.
SimulatedEstimates simulate_estimates(const Scenario& scenario, Hypothesis hypothesis,
                                      int workers = 1);

// Full decision experiment. The hypothesis is implied by spoofer presence;
// tau_override substitutes a calibrated threshold for the Wald one.
TrialResults run_trials(const Scenario& scenario,
                        std::optional<double> tau_override = std::nullopt,
                        int workers = 1);

// (1 - alpha) empirical quantile of T = |theta_hat - theta_u| under H0 by
// order statistic (1-based index ceil((1 - alpha) * trials)). Requires
// trials >= 10 / alpha. Any spoofer in the scenario is ignored.
double calibrate_threshold_mc(const Scenario& scenario, double alpha, int workers = 1);

// c = (1/L) sum_l e^{j phi_l}.
std::complex<double> coherent_gain(const std::vector<double>& phases);

// E[e^{j phi}] = sin(phi_max) / phi_max for phi ~ U[-phi_max, phi_max].
double expected_coherent_gain(double phi_max);

} // namespace aoapla::mc
