// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/search.hpp"
#include "aoapla/signal_model.hpp"

#include <Eigen/Dense>

namespace aoapla::est {

// K snapshots stored column-wise, M x K.
struct SnapshotBatch {
    SnapshotBatch(model::UlaGeometry geometry, Eigen::MatrixXcd snapshots);

    model::UlaGeometry geometry;
    Eigen::MatrixXcd data;

    int num_snapshots() const noexcept { return static_cast<int>(data.cols()); }

    // Column sum accumulated snapshot-by-snapshot; the estimator depends on
    // the batch only through this vector.
    Eigen::VectorXcd snapshot_sum() const;
};

struct AoaEstimate {
    double theta_hat = 0.0;
    double objective_value = 0.0;  // sum_k ||x_k - a(theta_hat)||^2
    bool converged = false;
};

// Quasi-ML estimate: argmin_theta sum_k ||x_k - a(theta)||^2 over the
// guarded open interval, equivalently argmax Re{a(theta)^H xbar}. Dense grid
// scan plus golden-section refinement; an unconverged refinement or a peak
// in the guard band is reported with converged=false and the grid value.
AoaEstimate estimate_aoa(
    const SnapshotBatch& batch,
    const search::SearchSettings& settings = search::SearchSettings::estimator_defaults());

// Variant reusing a tabulated steering grid across many batches.
AoaEstimate estimate_aoa(const SnapshotBatch& batch, const search::SteeringGrid& grid);

// T(X) = |theta_hat - theta_u|.
double test_statistic(const AoaEstimate& estimate, double theta_u);

} // namespace aoapla::est
