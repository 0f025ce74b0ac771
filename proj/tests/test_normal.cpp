// Copyright (c) 2026 the aoa-pla-lab authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoapla/normal.hpp"

#include <cmath>

using namespace aoapla;

TEST_CASE("pdf known values and symmetry") {
    CHECK(normal_pdf(0.0) == doctest::Approx(0.39894228040143268).epsilon(1e-15));
    CHECK(normal_pdf(1.0) == doctest::Approx(0.24197072451914335).epsilon(1e-15));
    for (double x : {0.3, 1.7, 4.2, 9.0})
        CHECK(normal_pdf(-x) == normal_pdf(x));
}

TEST_CASE("cdf and survival known values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.84134474606854295).epsilon(1e-15));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-15));
    CHECK(normal_sf(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-15));
    CHECK(normal_sf(2.5) == doctest::Approx(0.0062096653257761352).epsilon(1e-14));
    // Far tails keep relative accuracy instead of rounding to 0 or 1.
    CHECK(normal_sf(10.0) == doctest::Approx(7.6198530241605261e-24).epsilon(1e-13));
    CHECK(normal_sf(37.0) == doctest::Approx(5.7255712225245768e-300).epsilon(1e-12));
}

TEST_CASE("cdf and survival are reflections") {
    for (double x : {-8.0, -3.1, -0.4, 0.0, 0.9, 2.6, 7.5}) {
        CHECK(normal_sf(x) == doctest::Approx(normal_cdf(-x)).epsilon(1e-15));
        CHECK(normal_cdf(x) + normal_sf(x) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("quantile known values") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400539).epsilon(1e-14));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035489005).epsilon(1e-14));
    CHECK(normal_quantile(0.9995) == doctest::Approx(3.2905267314919258).epsilon(1e-14));
    CHECK(normal_quantile(0.75) == doctest::Approx(0.67448975019608174).epsilon(1e-14));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.3613409024040562).epsilon(1e-14));
}

TEST_CASE("quantile round trips through the cdf") {
    for (double p : {1e-300, 1e-12, 1e-4, 0.2, 0.5, 0.77, 1.0 - 1e-4, 1.0 - 1e-12}) {
        const double x = normal_quantile(p);
        if (p <= 0.5)
            CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-12));
        else
            CHECK(normal_sf(x) == doctest::Approx(1.0 - p).epsilon(1e-12));
    }
    // The lower tail keeps full precision in cdf, the upper tail in sf.
    for (double x : {-9.0, -2.0, -0.125, 0.375, 1.5, 6.0}) {
        if (x <= 0.0)
            CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-13));
        else
            CHECK(normal_quantile(normal_sf(x)) == doctest::Approx(-x).epsilon(1e-13));
    }
}

TEST_CASE("two-sided quantile matches the half-tail quantile") {
    for (double alpha : {1e-6, 1e-3, 0.01, 0.05, 0.5, 0.99}) {
        CHECK(normal_two_sided_quantile(alpha) ==
              doctest::Approx(-normal_quantile(alpha / 2)).epsilon(1e-15));
    }
    CHECK(normal_two_sided_quantile(1e-3) ==
          doctest::Approx(3.2905267314918948).epsilon(1e-13));
    CHECK(normal_two_sided_quantile(0.05) ==
          doctest::Approx(1.9599639845400542).epsilon(1e-13));
}

TEST_CASE("domains are enforced") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.25), std::domain_error);
    CHECK_THROWS_AS(normal_two_sided_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_two_sided_quantile(1.0), std::domain_error);
}
