// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/montecarlo.hpp"

#include "aoapla/angles.hpp"
#include "aoapla/authtest.hpp"
#include "aoapla/bounds.hpp"
#include "aoapla/normal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <thread>
#include <utility>

namespace aoapla::mc {

namespace {

// Trials per work unit. Fixed so that batch composition, and with it every
// floating-point reduction, is independent of the worker count.
constexpr long long kBatch = 128;

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

Eigen::MatrixXcd steering_matrix(const model::UlaGeometry& geom,
                                 const model::SpooferConfig& spoofer) {
    Eigen::MatrixXcd a(geom.num_elements, spoofer.num_antennas());
    for (int l = 0; l < spoofer.num_antennas(); ++l)
        a.col(l) = model::steering(geom, spoofer.angles[static_cast<std::size_t>(l)]);
    return a;
}

} // namespace

void Scenario::validate() const {
    if (!(std::abs(theta_u) < pi / 2.0))
        throw std::invalid_argument("Scenario: theta_u must lie in (-pi/2, pi/2)");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("Scenario: sigma2 must be positive and finite");
    if (snapshots < 1)
        throw std::invalid_argument("Scenario: at least one snapshot is required");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("Scenario: alpha must lie in (0, 1)");
    if (trials < 1)
        throw std::invalid_argument("Scenario: at least one trial is required");
    if (trials > 0xffffffffLL)
        throw std::invalid_argument("Scenario: trial count exceeds the 32-bit stream counter");
    if (phase_spread) {
        if (!spoofer)
            throw std::invalid_argument("Scenario: a phase-spread model requires a spoofer");
        if (!(phase_spread->phi_max >= 0.0) || !std::isfinite(phase_spread->phi_max))
            throw std::invalid_argument("Scenario: phi_max must be finite and >= 0");
    }
}

EmpiricalEstimate EmpiricalEstimate::wilson(long long successes, long long trials,
                                            double confidence) {
    if (trials < 1)
        throw std::invalid_argument("EmpiricalEstimate: at least one trial is required");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("EmpiricalEstimate: successes must lie in [0, trials]");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("EmpiricalEstimate: confidence must lie in (0, 1)");

    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + z2n / 2.0) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;

    EmpiricalEstimate out;
    out.successes = successes;
    out.trials = trials;
    out.p_hat = p;
    out.ci_low = std::max(0.0, center - half);
    out.ci_high = std::min(1.0, center + half);
    out.confidence = confidence;
    return out;
}

EmpiricalEstimate EmpiricalEstimate::complement() const noexcept {
    EmpiricalEstimate out = *this;
    out.successes = trials - successes;
    out.p_hat = 1.0 - p_hat;
    out.ci_low = 1.0 - ci_high;
    out.ci_high = 1.0 - ci_low;
    return out;
}

std::vector<double> spoofer_phases(const Scenario& scenario, long long trial_index) {
    if (!scenario.spoofer)
        throw std::invalid_argument("spoofer_phases: scenario has no spoofer");
    const std::size_t num = static_cast<std::size_t>(scenario.spoofer->num_antennas());
    if (!scenario.phase_spread)
        return std::vector<double>(num, 0.0);
    if (scenario.phase_spread->redraw == PhaseRedraw::fixed)
        return phase_draw(scenario, 0);

    const rng::key2 key = rng::split_key(scenario.seed);
    const double phi_max = scenario.phase_spread->phi_max;
    std::vector<double> phases(num);
    for (std::size_t l = 0; l < num; ++l)
        phases[l] = phi_max * rng::uniform_sym(key, static_cast<std::uint32_t>(l), 0,
                                               static_cast<std::uint32_t>(trial_index),
                                               rng::StreamTag::phase_trial);
    return phases;
}

std::vector<double> phase_draw(const Scenario& scenario, int draw_index) {
    if (!scenario.spoofer)
        throw std::invalid_argument("phase_draw: scenario has no spoofer");
    if (draw_index < 0)
        throw std::invalid_argument("phase_draw: draw index must be >= 0");
    const std::size_t num = static_cast<std::size_t>(scenario.spoofer->num_antennas());
    const double phi_max = scenario.phase_spread ? scenario.phase_spread->phi_max : 0.0;

    const rng::key2 key = rng::split_key(scenario.seed);
    std::vector<double> phases(num);
    for (std::size_t l = 0; l < num; ++l)
        phases[l] = phi_max * rng::uniform_sym(key, static_cast<std::uint32_t>(l),
                                               static_cast<std::uint32_t>(draw_index), 0,
                                               rng::StreamTag::phase_fixed);
    return phases;
}

Eigen::VectorXcd trial_mean(const Scenario& scenario, Hypothesis hypothesis,
                            long long trial_index) {
    if (hypothesis == Hypothesis::h0)
        return model::steering(scenario.geometry, scenario.theta_u);
    if (!scenario.spoofer)
        throw std::invalid_argument("trial_mean: H1 requires a spoofer");

    model::SpooferConfig sp = *scenario.spoofer;
    const std::vector<double> phases = spoofer_phases(scenario, trial_index);
    for (int l = 0; l < sp.num_antennas(); ++l)
        sp.weights[static_cast<std::size_t>(l)] *=
            std::polar(1.0, phases[static_cast<std::size_t>(l)]);
    return model::spoofed_mean(scenario.geometry, sp);
}

est::SnapshotBatch generate_snapshots(const Scenario& scenario, Hypothesis hypothesis,
                                      long long trial_index) {
    scenario.validate();
    const Eigen::VectorXcd mean = trial_mean(scenario, hypothesis, trial_index);
    const rng::key2 key = rng::split_key(scenario.seed);
    const rng::StreamTag tag = hypothesis == Hypothesis::h0 ? rng::StreamTag::noise_h0
                                                            : rng::StreamTag::noise_h1;
    const double scale = std::sqrt(scenario.sigma2 / 2.0);
    const std::uint32_t t32 = static_cast<std::uint32_t>(trial_index);

    Eigen::MatrixXcd x(scenario.geometry.num_elements, scenario.snapshots);
    for (int k = 0; k < scenario.snapshots; ++k) {
        for (int m = 0; m < scenario.geometry.num_elements; ++m) {
            const rng::GaussPair g = rng::gaussian_pair(key, static_cast<std::uint32_t>(m),
                                                        static_cast<std::uint32_t>(k), t32, tag);
            x(m, k) = mean[m] + model::cplx(scale * g.z0, scale * g.z1);
        }
    }
    return est::SnapshotBatch(scenario.geometry, std::move(x));
}

SimulatedEstimates simulate_estimates(const Scenario& scenario, Hypothesis hypothesis,
                                      int workers) {
    scenario.validate();
    if (workers < 1)
        throw std::invalid_argument("simulate_estimates: workers must be >= 1");
    if (hypothesis == Hypothesis::h1 && !scenario.spoofer)
        throw std::invalid_argument("simulate_estimates: H1 requires a spoofer");

    const int m = scenario.geometry.num_elements;
    const int k = scenario.snapshots;
    const long long n = scenario.trials;
    const rng::key2 key = rng::split_key(scenario.seed);
    const rng::StreamTag tag = hypothesis == Hypothesis::h0 ? rng::StreamTag::noise_h0
                                                            : rng::StreamTag::noise_h1;
    const double scale = std::sqrt(scenario.sigma2 / 2.0);
    const search::SteeringGrid grid(scenario.geometry, scenario.estimator_search);

    // The snapshot mean is constant across trials except under a per-trial
    // phase redraw, where it is rebuilt from a fixed steering matrix.
    const bool per_trial_mean = hypothesis == Hypothesis::h1 && scenario.phase_spread &&
                                scenario.phase_spread->redraw == PhaseRedraw::per_trial &&
                                scenario.phase_spread->phi_max != 0.0;
    Eigen::VectorXcd fixed_mean;
    Eigen::MatrixXcd steer;
    if (per_trial_mean)
        steer = steering_matrix(scenario.geometry, *scenario.spoofer);
    else
        fixed_mean = trial_mean(scenario, hypothesis, 0);

    std::vector<double> theta(static_cast<std::size_t>(n));
    std::vector<unsigned char> converged(static_cast<std::size_t>(n), 0);

    const long long num_batches = (n + kBatch - 1) / kBatch;
    std::atomic<long long> next_batch{0};

    auto worker_loop = [&]() {
        Eigen::MatrixXd xr(m, static_cast<int>(kBatch));
        Eigen::MatrixXd xi(m, static_cast<int>(kBatch));
        Eigen::MatrixXd obj;
        Eigen::VectorXcd weights;
        Eigen::VectorXcd mean_buf;
        if (per_trial_mean) {
            weights.resize(scenario.spoofer->num_antennas());
            mean_buf.resize(m);
        }

        for (;;) {
            const long long b = next_batch.fetch_add(1, std::memory_order_relaxed);
            if (b >= num_batches)
                break;
            const long long t0 = b * kBatch;
            const int width = static_cast<int>(std::min(kBatch, n - t0));
            xr.resize(m, width);
            xi.resize(m, width);

            for (int j = 0; j < width; ++j) {
                const std::uint32_t t32 = static_cast<std::uint32_t>(t0 + j);
                const Eigen::VectorXcd* mean = &fixed_mean;
                if (per_trial_mean) {
                    const double phi_max = scenario.phase_spread->phi_max;
                    for (int l = 0; l < weights.size(); ++l)
                        weights[l] = scenario.spoofer->weights[static_cast<std::size_t>(l)] *
                                     std::polar(1.0, phi_max * rng::uniform_sym(
                                                               key, static_cast<std::uint32_t>(l),
                                                               0, t32,
                                                               rng::StreamTag::phase_trial));
                    mean_buf.noalias() = steer * weights;
                    mean = &mean_buf;
                }
                for (int a = 0; a < m; ++a) {
                    const double mr = (*mean)[a].real();
                    const double mi = (*mean)[a].imag();
                    double sum_r = 0.0;
                    double sum_i = 0.0;
                    for (int s = 0; s < k; ++s) {
                        const rng::GaussPair g =
                            rng::gaussian_pair(key, static_cast<std::uint32_t>(a),
                                               static_cast<std::uint32_t>(s), t32, tag);
                        sum_r += mr + scale * g.z0;
                        sum_i += mi + scale * g.z1;
                    }
                    xr(a, j) = sum_r;
                    xi(a, j) = sum_i;
                }
            }

            grid.objective(xr, xi, obj);

            for (int j = 0; j < width; ++j) {
                int best = 0;
                double best_value = obj(0, j);
                for (int i = 1; i < grid.points(); ++i) {
                    if (obj(i, j) > best_value) {
                        best_value = obj(i, j);
                        best = i;
                    }
                }
                const double* col_r = xr.col(j).data();
                const double* col_i = xi.col(j).data();
                const auto f = [&](double th) {
                    return model::steering_correlation_split(scenario.geometry, th, col_r, col_i);
                };
                const search::LineSearchResult res =
                    search::refine_peak(f, scenario.estimator_search, best, best_value);
                const std::size_t t = static_cast<std::size_t>(t0 + j);
                theta[t] = res.x;
                converged[t] = res.converged && !res.at_guard ? 1 : 0;
            }
        }
    };

    if (workers == 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker_loop);
        for (std::thread& t : pool)
            t.join();
    }

    SimulatedEstimates out;
    out.theta_hat = std::move(theta);
    for (unsigned char c : converged)
        out.num_converged += c;
    return out;
}

TrialResults run_trials(const Scenario& scenario, std::optional<double> tau_override,
                        int workers) {
    scenario.validate();
    const Hypothesis hyp = scenario.spoofer ? Hypothesis::h1 : Hypothesis::h0;

    double tau;
    if (tau_override) {
        if (!(*tau_override > 0.0))
            throw std::invalid_argument("run_trials: threshold override must be positive");
        tau = *tau_override;
    } else {
        tau = auth::threshold(scenario.alpha, bounds::crb(scenario.geometry, scenario.theta_u,
                                                          scenario.sigma2, scenario.snapshots));
    }

    const SimulatedEstimates sim = simulate_estimates(scenario, hyp, workers);
    const std::size_t n = sim.theta_hat.size();

    long long exceed_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(sim.theta_hat[i] - scenario.theta_u) > tau)
            ++exceed_count;
    }

    const double mean = pairwise_sum(sim.theta_hat.data(), n) / static_cast<double>(n);
    double var = 0.0;
    if (n >= 2) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = sim.theta_hat[i] - mean;
            sq[i] = d * d;
        }
        var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    }

    TrialResults out;
    out.hypothesis = hyp;
    out.tau = tau;
    out.exceed = EmpiricalEstimate::wilson(exceed_count, scenario.trials);
    out.converged_trials = sim.num_converged;
    out.theta_mean = mean;
    out.theta_var = var;
    return out;
}

double calibrate_threshold_mc(const Scenario& scenario, double alpha, int workers) {
    scenario.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("calibrate_threshold_mc: alpha must lie in (0, 1)");
    if (static_cast<double>(scenario.trials) < 10.0 / alpha)
        throw std::invalid_argument(
            "calibrate_threshold_mc: at least 10/alpha trials are needed for the quantile");

    const SimulatedEstimates sim = simulate_estimates(scenario, Hypothesis::h0, workers);
    std::vector<double> t(sim.theta_hat.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = std::abs(sim.theta_hat[i] - scenario.theta_u);
    std::sort(t.begin(), t.end());

    const long long n = scenario.trials;
    long long index = static_cast<long long>(
        std::ceil((1.0 - alpha) * static_cast<double>(n)));
    index = std::max(1LL, std::min(n, index));
    return t[static_cast<std::size_t>(index - 1)];
}

std::complex<double> coherent_gain(const std::vector<double>& phases) {
    if (phases.empty())
        throw std::invalid_argument("coherent_gain: at least one phase is required");
    std::complex<double> acc{0.0, 0.0};
    for (double phi : phases)
        acc += std::polar(1.0, phi);
    return acc / static_cast<double>(phases.size());
}

double expected_coherent_gain(double phi_max) {
    if (!(phi_max >= 0.0))
        throw std::invalid_argument("expected_coherent_gain: phi_max must be >= 0");
    if (phi_max == 0.0)
        return 1.0;
    return std::sin(phi_max) / phi_max;
}

} // namespace aoapla::mc
