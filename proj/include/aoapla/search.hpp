// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/signal_model.hpp"

#include <Eigen/Dense>

#include <functional>

namespace aoapla::search {

// Dense-grid-then-golden-section settings shared by the pseudo-true solver
// and the AoA estimator. The guard band keeps searches strictly inside
// (-pi/2, pi/2), where the bounds stay finite.
struct SearchSettings {
    int grid_points = 4096;
    double guard_deg = 0.1;
    double tol_rad = 1e-10;
    int max_iter = 200;

    static SearchSettings pseudo_true_defaults() { return {4096, 0.1, 1e-10, 200}; }
    static SearchSettings estimator_defaults() { return {8192, 0.1, 1e-10, 200}; }

    double theta_low() const noexcept;
    double theta_high() const noexcept;
    double grid_theta(int index) const noexcept;
};

struct LineSearchResult {
    double x = 0.0;
    double value = 0.0;
    bool converged = false;
    bool multimodal = false;  // a second grid peak ties the global one
    bool at_guard = false;    // maximum sits on the guard-band edge
};

// Serial grid scan (ties broken toward the smallest angle) followed by
// golden-section refinement of the bracketing triple.
LineSearchResult maximize_scalar(const std::function<double(double)>& objective,
                                 const SearchSettings& settings);

// Refinement step alone, for callers that ran the grid stage themselves.
LineSearchResult refine_peak(const std::function<double(double)>& objective,
                             const SearchSettings& settings, int grid_index,
                             double grid_value);

// Steering vectors tabulated on the search grid, stored as split real and
// imaginary parts so that Re{a(theta_i)^H x} over all i becomes two real
// matrix products. Shared across trials of one scenario.
class SteeringGrid {
  public:
    SteeringGrid(const model::UlaGeometry& geom, const SearchSettings& settings);

    const SearchSettings& settings() const noexcept { return settings_; }
    int points() const noexcept { return static_cast<int>(thetas_.size()); }
    double theta(int index) const { return thetas_[index]; }

    // obj(i, t) = Re{a(theta_i)^H x_t} for every column x_t of (xr, xi).
    void objective(const Eigen::MatrixXd& xr, const Eigen::MatrixXd& xi,
                   Eigen::MatrixXd& obj) const;

  private:
    SearchSettings settings_;
    Eigen::MatrixXd real_;  // G x M, Re a_m(theta_i)
    Eigen::MatrixXd imag_;  // G x M, Im a_m(theta_i)
    Eigen::VectorXd thetas_;
};

} // namespace aoapla::search
