// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/search.hpp"

#include "aoapla/angles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace aoapla::search {

namespace {

void check_settings(const SearchSettings& s) {
    if (s.grid_points < 512)
        throw std::invalid_argument("SearchSettings: grid resolution must be at least 512");
    if (!(s.guard_deg > 0.0) || !(s.guard_deg < 90.0))
        throw std::invalid_argument("SearchSettings: guard band must lie in (0, 90) degrees");
    if (!(s.tol_rad > 0.0))
        throw std::invalid_argument("SearchSettings: refinement tolerance must be positive");
}

// Golden-section contraction of a bracketing triple around a maximum.
LineSearchResult golden_refine(const std::function<double(double)>& f, double lo,
                               double mid, double hi, double mid_value,
                               const SearchSettings& s) {
    constexpr double shrink = 0.3819660112501051;  // (3 - sqrt 5) / 2

    double x0 = lo, x3 = hi;
    double x1, x2, f1, f2;
    if (hi - mid > mid - lo) {
        x1 = mid;
        f1 = mid_value;
        x2 = mid + shrink * (hi - mid);
        f2 = f(x2);
    } else {
        x2 = mid;
        f2 = mid_value;
        x1 = mid - shrink * (mid - lo);
        f1 = f(x1);
    }

    int iter = 0;
    while (x3 - x0 > s.tol_rad && iter < s.max_iter) {
        if (f1 >= f2) {
            x3 = x2;
            x2 = x1;
            f2 = f1;
            x1 = x2 - shrink * (x3 - x0);
            f1 = f(x1);
        } else {
            x0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = x1 + shrink * (x3 - x0);
            f2 = f(x2);
        }
        ++iter;
    }

    LineSearchResult res;
    res.converged = (x3 - x0) <= s.tol_rad;
    if (f1 >= f2) {
        res.x = x1;
        res.value = f1;
    } else {
        res.x = x2;
        res.value = f2;
    }
    return res;
}

} // namespace

double SearchSettings::theta_low() const noexcept {
    return -pi / 2.0 + deg2rad(guard_deg);
}

double SearchSettings::theta_high() const noexcept {
    return pi / 2.0 - deg2rad(guard_deg);
}

double SearchSettings::grid_theta(int index) const noexcept {
    const double lo = theta_low();
    const double step = (theta_high() - lo) / (grid_points - 1);
    return lo + step * index;
}

LineSearchResult refine_peak(const std::function<double(double)>& objective,
                             const SearchSettings& settings, int grid_index,
                             double grid_value) {
    check_settings(settings);
    if (grid_index <= 0 || grid_index >= settings.grid_points - 1) {
        // Peak on the guard edge: no bracket exists on one side.
        LineSearchResult res;
        res.x = settings.grid_theta(grid_index);
        res.value = grid_value;
        res.converged = false;
        res.at_guard = true;
        return res;
    }
    return golden_refine(objective, settings.grid_theta(grid_index - 1),
                         settings.grid_theta(grid_index),
                         settings.grid_theta(grid_index + 1), grid_value, settings);
}

LineSearchResult maximize_scalar(const std::function<double(double)>& objective,
                                 const SearchSettings& settings) {
    check_settings(settings);

    // Serial scan; strict comparison keeps the smallest-angle tie winner.
    int best = 0;
    double best_value = objective(settings.grid_theta(0));
    std::vector<double> values(static_cast<std::size_t>(settings.grid_points));
    values[0] = best_value;
    for (int i = 1; i < settings.grid_points; ++i) {
        values[static_cast<std::size_t>(i)] = objective(settings.grid_theta(i));
        if (values[static_cast<std::size_t>(i)] > best_value) {
            best_value = values[static_cast<std::size_t>(i)];
            best = i;
        }
    }

    LineSearchResult res = refine_peak(objective, settings, best, best_value);

    // Exact-ambiguity detection: a non-neighbouring grid point tying the
    // global peak at rounding level.
    const double tie = 1e-12 * (1.0 + std::abs(best_value));
    for (int i = 0; i < settings.grid_points; ++i) {
        if (std::abs(i - best) > 1 && values[static_cast<std::size_t>(i)] >= best_value - tie) {
            res.multimodal = true;
            break;
        }
    }
    return res;
}

SteeringGrid::SteeringGrid(const model::UlaGeometry& geom, const SearchSettings& settings)
    : settings_(settings) {
    check_settings(settings_);
    const int g = settings_.grid_points;
    const int m = geom.num_elements;
    real_.resize(g, m);
    imag_.resize(g, m);
    thetas_.resize(g);
    for (int i = 0; i < g; ++i) {
        const double th = settings_.grid_theta(i);
        thetas_[i] = th;
        const double phase = -geom.kappa() * std::sin(th);
        for (int j = 0; j < m; ++j) {
            // With a_m = e^{j phase m}, Re{a^H x} = sum_m cos(phase m) Re x_m
            // + sin(phase m) Im x_m, so the two stored parts are cos and sin.
            real_(i, j) = std::cos(phase * j);
            imag_(i, j) = std::sin(phase * j);
        }
    }
}

void SteeringGrid::objective(const Eigen::MatrixXd& xr, const Eigen::MatrixXd& xi,
                             Eigen::MatrixXd& obj) const {
    obj.noalias() = real_ * xr;
    obj.noalias() += imag_ * xi;
}

} // namespace aoapla::search
