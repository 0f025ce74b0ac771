// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/estimator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aoapla::est {

namespace {

AoaEstimate from_line_search(const SnapshotBatch& batch,
                             const search::LineSearchResult& res) {
    AoaEstimate out;
    out.theta_hat = res.x;
    out.converged = res.converged && !res.at_guard;
    out.objective_value = batch.data.squaredNorm() - 2.0 * res.value +
                          static_cast<double>(batch.num_snapshots()) *
                              batch.geometry.num_elements;
    return out;
}

} // namespace

SnapshotBatch::SnapshotBatch(model::UlaGeometry geometry_, Eigen::MatrixXcd snapshots)
    : geometry(std::move(geometry_)), data(std::move(snapshots)) {
    if (data.rows() != geometry.num_elements)
        throw std::invalid_argument("SnapshotBatch: snapshot length must equal the array size");
    if (data.cols() < 1)
        throw std::invalid_argument("SnapshotBatch: at least one snapshot is required");
}

Eigen::VectorXcd SnapshotBatch::snapshot_sum() const {
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(data.rows());
    for (Eigen::Index k = 0; k < data.cols(); ++k)
        sum += data.col(k);
    return sum;
}

AoaEstimate estimate_aoa(const SnapshotBatch& batch, const search::SearchSettings& settings) {
    const Eigen::VectorXcd xbar = batch.snapshot_sum();
    const auto f = [&](double theta) { return model::steering_correlation(batch.geometry, theta, xbar); };
    return from_line_search(batch, search::maximize_scalar(f, settings));
}

AoaEstimate estimate_aoa(const SnapshotBatch& batch, const search::SteeringGrid& grid) {
    const Eigen::VectorXcd xbar = batch.snapshot_sum();

    Eigen::MatrixXd xr(xbar.size(), 1), xi(xbar.size(), 1);
    for (Eigen::Index m = 0; m < xbar.size(); ++m) {
        xr(m, 0) = xbar[m].real();
        xi(m, 0) = xbar[m].imag();
    }
    Eigen::MatrixXd obj;
    grid.objective(xr, xi, obj);

    int best = 0;
    double best_value = obj(0, 0);
    for (int i = 1; i < grid.points(); ++i) {
        if (obj(i, 0) > best_value) {
            best_value = obj(i, 0);
            best = i;
        }
    }

    const auto f = [&](double theta) { return model::steering_correlation(batch.geometry, theta, xbar); };
    return from_line_search(batch, search::refine_peak(f, grid.settings(), best, best_value));
}

double test_statistic(const AoaEstimate& estimate, double theta_u) {
    return std::abs(estimate.theta_hat - theta_u);
}

} // namespace aoapla::est
