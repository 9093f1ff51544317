#include <doctest.h>

#include <random>

#include "denoise/errors.hpp"
#include "denoise/oracle.hpp"
#include "denoise/pos.hpp"
#include "instances.hpp"

using namespace denoise;
using namespace denoise::testing;

TEST_CASE("compare on I2") {
    const auto g = reference_i2();
    const auto report = compare(g);
    // 3322.74112777602 / 3261.37056388801
    CHECK(report.pos_welfare == doctest::Approx(1.018817415159).epsilon(1e-10));
    CHECK(report.accuracy_gap == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(report.noise_gap == doctest::Approx(0.05).epsilon(1e-8));

    // Grid oracle agrees on the numerator.
    const auto brute = brute_force_swm(g, 0.001);
    CHECK(report.swm.welfare == doctest::Approx(brute.welfare).epsilon(1e-9));
}

TEST_CASE("compare when solutions coincide") {
    const auto clean = compare(all_clean(3));
    CHECK(clean.pos_welfare == 1.0);
    CHECK(clean.accuracy_gap == 0.0);
    CHECK(clean.noise_gap == 0.0);

    const auto corner = compare(reference_i2(500.0));
    CHECK(corner.pos_welfare == 1.0);
    CHECK(corner.accuracy_gap == 0.0);
    CHECK(corner.noise_gap == 0.0);
}

TEST_CASE("RatioUndefined carries both welfares") {
    const RatioUndefined e("x", 2.0, -1.0);
    CHECK(e.welfare_swm() == 2.0);
    CHECK(e.welfare_ne() == -1.0);
}

TEST_CASE("orderings hold on random instances") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = random_instance(rng);
        const auto r = compare(g);
        CHECK(r.noise_gap >= -1e-9);
        CHECK(r.accuracy_gap >= -1e-12);
        CHECK(r.swm.welfare >= r.ne.welfare - 1e-9 * std::abs(r.ne.welfare));
        CHECK(r.pos_welfare >= 1.0 - 1e-9);
        // g decreasing: the accuracy ordering follows from the noise ordering.
        if (r.noise_gap > 1e-9) CHECK(r.accuracy_gap > 0.0);
    }
}
