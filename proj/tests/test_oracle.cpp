#include <doctest.h>

#include <cmath>
#include <random>

#include "denoise/errors.hpp"
#include "denoise/ne.hpp"
#include "denoise/oracle.hpp"
#include "instances.hpp"

using namespace denoise;
using namespace denoise::testing;

TEST_CASE("brute force optimum") {
    const auto g = reference_i2();
    const auto result = brute_force_swm(g, 0.01);
    CHECK(result.profile[0] == doctest::Approx(0.05));
    CHECK(result.profile[1] == doctest::Approx(0.05));
    CHECK(result.welfare == doctest::Approx(3322.74112777602).epsilon(1e-9));

    const auto clean = brute_force_swm(all_clean(2), 0.01);
    CHECK(clean.profile == StrategyProfile({0.0, 0.0}));

    const GameInstance single({{2000, 100, 0.2}}, AccuracyModel::linear(-1, 0.95), CostModel::log(-1));
    const auto one = brute_force_swm(single, 0.001);
    // Zero of (-20 + 1/x).
    CHECK(one.profile[0] == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("brute force grid includes eps even when the step does not divide it") {
    const GameInstance g({{500, 100, 0.2}, {500, 100, 0.2}}, AccuracyModel::linear(-1, 0.95), CostModel::log(-1));
    const auto result = brute_force_swm(g, 0.03);  // 0.2 is not a multiple of 0.03
    CHECK(result.profile == StrategyProfile({0.2, 0.2}));
}

TEST_CASE("brute force refuses oversized grids") {
    std::vector<ClientParams> five(5, ClientParams{1000, 100, 0.1});
    CHECK_THROWS_AS(brute_force_swm(GameInstance(five, AccuracyModel{}, CostModel{}), 0.05), BudgetExceeded);
    std::vector<ClientParams> four(4, ClientParams{1000, 100, 0.2});
    CHECK_THROWS_AS(brute_force_swm(GameInstance(four, AccuracyModel{}, CostModel{}), 1e-3), BudgetExceeded);
    CHECK_THROWS_AS(brute_force_swm(reference_i2(), 0.0), InvalidInput);
}

TEST_CASE("verify_ne") {
    const auto g = reference_i2();
    const auto at_ne = verify_ne(g, StrategyProfile({0.1, 0.1}), 1e-3);
    CHECK(at_ne.ok);
    CHECK(at_ne.max_gain <= 1e-9);

    const auto at_eps = verify_ne(g, StrategyProfile({0.2, 0.2}), 1e-3);
    CHECK_FALSE(at_eps.ok);
    // Best grid deviation is to 0.1: (2000 * 0.80 - 100 ln 2) - 1500.
    CHECK(at_eps.max_gain == doctest::Approx(30.68528194400547).epsilon(1e-9));

    CHECK(verify_ne(all_clean(3), StrategyProfile({0.0, 0.0, 0.0}), 1e-3).ok);
}

TEST_CASE("unimodality scan") {
    CHECK(check_unimodal(reference_i2(), 1000));
    CHECK(check_unimodal(all_clean(2), 1000));
    CHECK_THROWS_AS(check_unimodal(reference_i2(), 2), InvalidInput);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(check_unimodal(random_instance(rng, RandomSpec{.family = Family::quadratic}), 1000));
}

TEST_CASE("welfare Lipschitz bound dominates observed slopes") {
    const auto g = reference_i2();
    const double bound = welfare_lipschitz_bound(g);
    CHECK(bound > 0.0);
    // Largest |h| sum on the box corners is at the floor corner, (-20 + 1/floor) * 100 per client.
    CHECK(bound == doctest::Approx(2.0 * 100.0 * (1.0 / 2e-7 - 20.0)).epsilon(1e-12));
}
