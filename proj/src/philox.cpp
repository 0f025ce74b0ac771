// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#include "aoapla/philox.hpp"

#include <cmath>
#include <numbers>

namespace aoapla::rng {

namespace {

constexpr std::uint32_t mult0 = 0xD2511F53u;
constexpr std::uint32_t mult1 = 0xCD9E8D57u;
constexpr std::uint32_t weyl0 = 0x9E3779B9u;
constexpr std::uint32_t weyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::uint64_t to_u64(std::uint32_t hi, std::uint32_t lo) noexcept {
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

} // namespace

counter4 philox4x32(counter4 c, key2 k) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += weyl0;
            k[1] += weyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(mult0, c[0], hi0, lo0);
        mulhilo(mult1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

GaussPair gaussian_pair(key2 key, std::uint32_t lane_a, std::uint32_t lane_b,
                        std::uint32_t trial, StreamTag tag) noexcept {
    counter4 out =
        philox4x32({lane_a, lane_b, trial, static_cast<std::uint32_t>(tag)}, key);
    // 53-bit uniforms; u1 is shifted into (0, 1] so the log never sees zero.
    constexpr double scale = 0x1.0p-53;
    double u1 = (static_cast<double>(to_u64(out[0], out[1]) >> 11) + 1.0) * scale;
    double u2 = static_cast<double>(to_u64(out[2], out[3]) >> 11) * scale;
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

double uniform_sym(key2 key, std::uint32_t lane_a, std::uint32_t lane_b,
                   std::uint32_t trial, StreamTag tag) noexcept {
    counter4 out =
        philox4x32({lane_a, lane_b, trial, static_cast<std::uint32_t>(tag)}, key);
    constexpr double scale = 0x1.0p-53;
    double u = static_cast<double>(to_u64(out[0], out[1]) >> 11) * scale;
    return 2.0 * u - 1.0;
}

} // namespace aoapla::rng
