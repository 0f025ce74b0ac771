// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/csv.hpp"

#include "aoapla/version.hpp"

#include <cstdio>

namespace aoapla::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) {
    return v ? num(*v) : std::string();
}

} // namespace

std::string csv_header_comment(std::uint64_t seed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "# aoa-pla-lab v%s seed=%llu", version_string,
                  static_cast<unsigned long long>(seed));
    return buf;
}

std::string csv_column_line(bool timing) {
    std::string line =
        "axis,value,M,K,L,snr_db,theta_u_deg,angular_offset_deg,phi_max_deg,alpha,"
        "crb_k,mcrb_k,theta0_deg,delta_deg,tau,p_fa,p_sd,"
        "p_fa_hat,p_sd_hat,ci_low,ci_high,trials";
    if (timing)
        line += ",runtime_ms";
    return line;
}

std::string csv_row_line(const ResultRow& row, bool timing) {
    std::string line;
    line += axis_token(row.axis);
    line += ',';
    line += num(row.axis_value);
    char ints[96];
    std::snprintf(ints, sizeof ints, ",%d,%d,%d,", row.num_elements, row.snapshots,
                  row.spoofer_antennas);
    line += ints;
    line += num(row.snr_db);
    line += ',';
    line += num(row.theta_u_deg);
    line += ',';
    line += opt_num(row.angular_offset_deg);
    line += ',';
    line += num(row.phi_max_deg);
    line += ',';
    line += num(row.alpha);
    line += ',';
    line += num(row.crb_k);
    line += ',';
    line += opt_num(row.mcrb_k);
    line += ',';
    line += opt_num(row.theta0_deg);
    line += ',';
    line += opt_num(row.delta_deg);
    line += ',';
    line += num(row.tau);
    line += ',';
    line += num(row.p_fa);
    line += ',';
    line += opt_num(row.p_sd);
    line += ',';

    if (row.p_fa_emp)
        line += num(row.p_fa_emp->p_hat);
    line += ',';
    if (row.p_sd_emp)
        line += num(row.p_sd_emp->p_hat);
    line += ',';
    // The interval columns describe the hypothesis the row is about: the
    // detection estimate when a spoofer is present, the false-alarm estimate
    // otherwise.
    const std::optional<mc::EmpiricalEstimate>& interval =
        row.p_sd_emp ? row.p_sd_emp : row.p_fa_emp;
    if (interval) {
        line += num(interval->ci_low);
        line += ',';
        line += num(interval->ci_high);
        line += ',';
        char trials[24];
        std::snprintf(trials, sizeof trials, "%lld", interval->trials);
        line += trials;
    } else {
        line += ",,";
    }

    if (timing) {
        line += ',';
        line += opt_num(row.runtime_ms);
    }
    return line;
}

std::string render_csv(const std::vector<ResultRow>& rows, std::uint64_t seed, bool timing) {
    std::string out = csv_header_comment(seed);
    out += '\n';
    out += csv_column_line(timing);
    out += '\n';
    for (const ResultRow& row : rows) {
        out += csv_row_line(row, timing);
        out += '\n';
    }
    return out;
}

} // namespace aoapla::cli
