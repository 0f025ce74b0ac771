// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace aoapla::rng {

// Philox4x32-10 counter-based generator. A block is a pure function of
// (counter, key), so any trial/antenna/snapshot coordinate can be hashed to
// its own independent stream and parallel scheduling cannot reorder draws.
using counter4 = std::array<std::uint32_t, 4>;
using key2 = std::array<std::uint32_t, 2>;

counter4 philox4x32(counter4 counter, key2 key) noexcept;

inline key2 split_key(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed & 0xffffffffu),
            static_cast<std::uint32_t>(seed >> 32)};
}

// Logical sub-streams drawn from one seed. The counter layout is
// {lane_a, lane_b, trial, tag}; lane assignments are documented per use.
enum class StreamTag : std::uint32_t {
    noise_h0 = 0,    // lanes: (antenna, snapshot)
    noise_h1 = 1,    // lanes: (antenna, snapshot)
    phase_trial = 2, // lanes: (spoofer antenna, 0), per-trial redraw
    phase_fixed = 3, // lanes: (spoofer antenna, draw index), trial always 0
};

struct GaussPair {
    double z0;
    double z1;
};

// One Philox block mapped through Box-Muller. The transform is
// rejection-free, so every coordinate consumes exactly one block and the
// draw count per trial is a fixed function of the scenario shape.
GaussPair gaussian_pair(key2 key, std::uint32_t lane_a, std::uint32_t lane_b,
                        std::uint32_t trial, StreamTag tag) noexcept;

// Uniform draw on [-1, 1) from the first 64 bits of one block.
double uniform_sym(key2 key, std::uint32_t lane_a, std::uint32_t lane_b,
                   std::uint32_t trial, StreamTag tag) noexcept;

} // namespace aoapla::rng
