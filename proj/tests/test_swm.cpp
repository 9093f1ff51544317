#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "denoise/errors.hpp"
#include "denoise/oracle.hpp"
#include "denoise/swm.hpp"
#include "instances.hpp"

using namespace denoise;
using namespace denoise::testing;

TEST_CASE("h_swm on I2") {
    const auto g = reference_i2();
    CHECK(h_swm(g, 0, StrategyProfile({0.05, 0.05})) == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    CHECK(h_swm(g, 0, StrategyProfile({0.2, 0.2})) == doctest::Approx(-1500.0).epsilon(1e-12));
    CHECK(h_swm(g, 1, StrategyProfile({0.02, 0.02})) == doctest::Approx(3000.0).epsilon(1e-12));
    CHECK_THROWS_AS(h_swm(g, 5, StrategyProfile({0.02, 0.02})), InvalidInput);
    CHECK_THROWS_AS(h_swm(g, 0, StrategyProfile({0.3, 0.02})), InfeasibleStrategy);
}

TEST_CASE("h_swm is strictly decreasing in own strategy") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_instance(rng);
        auto profile = g.epsilon_profile();
        const double eps = g.clients()[0].epsilon;
        double previous = INFINITY;
        for (int k = 1; k <= 50; ++k) {
            profile[0] = std::min(eps, eps * k / 50.0);
            const double h = h_swm(g, 0, profile);
            CHECK(h < previous);
            previous = h;
        }
    }
}

TEST_CASE("profile_from_threshold clamps at eps") {
    const GameInstance g({{1000, 100, 0.05}, {1000, 100, 0.2}}, AccuracyModel::linear(-1, 0.95), CostModel::log(-1));
    CHECK(profile_from_threshold(g, 0.1) == StrategyProfile({0.05, 0.1}));
    CHECK(profile_from_threshold(g, 0.0) == StrategyProfile({0.0, 0.0}));
    CHECK(profile_from_threshold(g, 0.3) == StrategyProfile({0.05, 0.2}));
    CHECK_THROWS_AS(profile_from_threshold(g, -0.1), InvalidInput);
}

TEST_CASE("welfare_of_threshold on I2") {
    const auto g = reference_i2();
    CHECK(welfare_of_threshold(g, 0.05) == doctest::Approx(3322.74112777602).epsilon(1e-9));
    CHECK(welfare_of_threshold(g, 0.2) == doctest::Approx(3000.0).epsilon(1e-12));
    CHECK(welfare_of_threshold(g, 0.1) == doctest::Approx(3261.37056388801).epsilon(1e-9));
    // The floor keeps H finite at theta = 0.
    CHECK(std::isfinite(welfare_of_threshold(g, 0.0)));
}

TEST_CASE("solve_swm on I2 matches the closed form and the grid oracle") {
    const auto g = reference_i2();
    const auto report = solve_swm(g, 1e-9);
    // Zero of (-20 + 1/x) * 100.
    CHECK(report.theta == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(report.profile[0] == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(report.profile[1] == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(report.welfare == doctest::Approx(3322.74112777602).epsilon(1e-9));
    CHECK(report.accuracy == doctest::Approx(0.90).epsilon(1e-9));
    CHECK(report.avg_noise == doctest::Approx(0.05).epsilon(1e-8));

    const auto brute = brute_force_swm(g, 0.01);
    CHECK(brute.profile[0] == doctest::Approx(0.05));
    CHECK(brute.profile[1] == doctest::Approx(0.05));
    CHECK(report.welfare >= brute.welfare - 1e-9);
}

TEST_CASE("solve_swm corner: no correction when h_swm(eps) = 0") {
    const auto g = reference_i2(500.0);
    const auto report = solve_swm(g, 1e-9);
    CHECK(report.theta == 0.2);
    CHECK(report.profile == StrategyProfile({0.2, 0.2}));
    CHECK(report.welfare == doctest::Approx(1000.0 * 0.75));
}

TEST_CASE("solve_swm with no noise") {
    const auto report = solve_swm(all_clean(3), 1e-9);
    CHECK(report.theta == 0.0);
    CHECK(report.ternary_iterations == 0);
    CHECK(report.profile == StrategyProfile({0.0, 0.0, 0.0}));
    CHECK(report.welfare == doctest::Approx(6000.0 * 0.95));
    CHECK_THROWS_AS(solve_swm(reference_i2(), 0.0), InvalidInput);
}

TEST_CASE("ternary iteration count respects the logarithmic bound") {
    std::mt19937_64 rng(5);
    for (double mu : {1e-3, 1e-6, 1e-9, 1e-12}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto g = random_instance(rng);
            const auto bound = static_cast<std::size_t>(std::ceil(std::log(g.max_epsilon() / mu) / std::log(1.5))) + 2;
            CHECK(solve_swm(g, mu).ternary_iterations <= bound);
        }
    }
}

TEST_CASE("solve_swm properties on random instances") {
    std::mt19937_64 rng(99);
    const double mu = 1e-9;
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = random_instance(rng);
        const auto report = solve_swm(g, mu);

        // Threshold structure.
        for (std::size_t n = 0; n < g.size(); ++n)
            CHECK(std::abs(report.profile[n] - std::min(report.theta, g.clients()[n].epsilon)) <= 1e-8);
        CHECK(report.welfare == social_welfare(g, report.profile));

        // KKT: interior clients sit at a zero of h_swm, clamped ones have h_swm(eps) >= 0.
        // The allowance covers theta being known only to within mu.
        for (std::size_t n = 0; n < g.size(); ++n) {
            const auto& c = g.clients()[n];
            const double x = std::max(report.profile[n], g.lower_bound(n));
            const double dh = c.d * (g.cost().second_derivative(x) +
                                     g.w_bar() / g.d_bar() * std::abs(g.accuracy().curvature()));
            const double tol = 1e-6 * c.d + 2.0 * dh * mu;
            const double h = h_swm(g, n, report.profile);
            if (c.epsilon > report.theta)
                CHECK(std::abs(h) <= tol);
            else
                CHECK(h >= -tol);
        }
    }
}

TEST_CASE("solve_swm comparative statics") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_instance(rng);
        const auto base = solve_swm(g).profile;
        const auto richer = solve_swm(scaled(g, 2.0, 1.0)).profile;
        const auto bigger = solve_swm(scaled(g, 1.0, 2.0)).profile;
        for (std::size_t n = 0; n < g.size(); ++n) {
            CHECK(richer[n] <= base[n] + 1e-9);
            CHECK(bigger[n] >= base[n] - 1e-9);
        }
    }
}

TEST_CASE("with linear g the optimum does not depend on how d is split at fixed d_bar") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = random_instance(rng, RandomSpec{.min_clients = 3, .max_clients = 5, .family = Family::linear});
        std::vector<ClientParams> moved(g.clients().begin(), g.clients().end());
        const double shift = 0.5 * std::min(moved[0].d, moved[1].d);
        moved[0].d += shift;
        moved[1].d -= shift;
        const GameInstance h(moved, g.accuracy(), g.cost());
        const auto a = solve_swm(g).profile;
        const auto b = solve_swm(h).profile;
        for (std::size_t n = 0; n < g.size(); ++n) CHECK(a[n] == doctest::Approx(b[n]).epsilon(1e-7));
    }

    // Quadratic g with homogeneous eps.
    const auto quad = AccuracyModel::quadratic(-2.0, -0.1, 0.95);
    const GameInstance even({{1e4, 100, 0.15}, {2e4, 300, 0.15}, {3e4, 200, 0.15}}, quad, CostModel::log(-1));
    const GameInstance skew({{1e4, 50, 0.15}, {2e4, 500, 0.15}, {3e4, 50, 0.15}}, quad, CostModel::log(-1));
    const auto a = solve_swm(even).profile;
    const auto b = solve_swm(skew).profile;
    for (std::size_t n = 0; n < 3; ++n) CHECK(a[n] == doctest::Approx(b[n]).epsilon(1e-7));
}

TEST_CASE("solve_swm never loses to the grid oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_instance(rng, RandomSpec{.min_clients = 2, .max_clients = 3});
        const auto report = solve_swm(g);
        const auto brute = brute_force_swm(g, 0.005);
        CHECK(report.welfare >= brute.welfare - 1e-9 * std::abs(brute.welfare));
    }
}

TEST_CASE("interior zero of h_swm") {
    // Linear g, log cost: zero at c d_bar / (w_bar kappa), whatever the box says.
    const auto g = reference_i2();
    CHECK(interior_zero_swm(g, 0, g.epsilon_profile()) == doctest::Approx(0.05).epsilon(1e-12));
    const auto poor = reference_i2(100.0);  // zero at 1.0, far beyond eps = 0.2
    CHECK(interior_zero_swm(poor, 1, poor.epsilon_profile()) == doctest::Approx(1.0).epsilon(1e-12));
}
