// Brute-force ground truth for desk-sized instances.

#pragma once

#include <cstddef>

#include "denoise/models.hpp"

namespace denoise {

struct BruteForceResult {
    StrategyProfile profile;
    double welfare = 0.0;
};

struct NeVerification {
    bool ok = false;
    double max_gain = 0.0;  ///< largest unilateral payoff improvement found on the grid
};

/// Enumerates the Cartesian grid {floor, step, 2 step, ..., eps_n} per client and
/// returns the welfare maximizer; ties go to the lexicographically smallest profile.
/// Requires N <= 4 and at most 1e7 grid points, else throws BudgetExceeded.
BruteForceResult brute_force_swm(const GameInstance& instance, double grid_step);

/// Scans every unilateral deviation on the grid and reports the best gain.
/// ok iff max_gain <= 1e-6 (1 + max |P_n|) + curvature * grid_step^2.
NeVerification verify_ne(const GameInstance& instance, const StrategyProfile& profile, double grid_step);

/// True iff H sampled on grid_points uniform thresholds over [0, max eps]
/// rises and then falls, ignoring steps within 1e-9 of max |H|.
bool check_unimodal(const GameInstance& instance, std::size_t grid_points);

/// Empirical welfare Lipschitz bound: the largest L1 norm of the welfare
/// gradient over the corners of the strategy box.
double welfare_lipschitz_bound(const GameInstance& instance);

}  // namespace denoise
