// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aoapla/sweep.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aoapla::cli {

// Sweep results as CSV. The first line is a comment carrying the version
// and seed, `# aoa-pla-lab v<semver> seed=<seed>`, then the column header.
// Doubles are printed with %.17g so rewriting the file round-trips exactly;
// absent optional fields serialize as empty cells. Without `timing` the
// bytes depend only on (config, seed), not on wall time or worker count.
std::string csv_header_comment(std::uint64_t seed);
std::string csv_column_line(bool timing);
std::string csv_row_line(const ResultRow& row, bool timing);
std::string render_csv(const std::vector<ResultRow>& rows, std::uint64_t seed, bool timing);

} // namespace aoapla::cli
