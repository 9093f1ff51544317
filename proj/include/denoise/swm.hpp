// Socially optimal denoising profile.
//
// The welfare maximizer caps every client's noise rate at a common threshold,
// x_n = min(theta, eps_n), and welfare along that one-parameter family,
// H(theta), is unimodal on [0, max eps_n]. Ternary search on H therefore finds
// the optimum in O(N log(1/mu)).

#pragma once

#include <cstddef>

#include "denoise/models.hpp"

namespace denoise {

struct SwmReport {
    double theta = 0.0;
    StrategyProfile profile;
    double welfare = 0.0;
    double accuracy = 0.0;
    double avg_noise = 0.0;
    std::size_t ternary_iterations = 0;
};

inline constexpr double kDefaultMu = 1e-9;

/// d SW / d x_n = ((w_bar / d_bar) g'(xbar) - f'(x_n)) d_n. Strictly decreasing in x_n.
/// Requires x_n at or above the cost floor.
double h_swm(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

/// x_n = min(theta, eps_n).
StrategyProfile profile_from_threshold(const GameInstance& instance, double theta);

/// H(theta) = SW(x(theta)), with the cost floor applied inside the clamp.
double welfare_of_threshold(const GameInstance& instance, double theta);

/// Maximizes H over [0, max eps] by ternary search until the bracket is at most mu wide.
/// The iteration count never exceeds ceil(log_{3/2}(max eps / mu)) + 2.
SwmReport solve_swm(const GameInstance& instance, double mu = kDefaultMu);

/// Unclamped zero of x -> h_swm(n, (x, x_{-n})) on (0, inf), ignoring the box.
double interior_zero_swm(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

}  // namespace denoise
