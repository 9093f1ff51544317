// Nash equilibrium of the label-denoising game via cyclic best response.

#pragma once

#include <cstddef>

#include "denoise/models.hpp"

namespace denoise {

struct NeReport {
    StrategyProfile profile;
    double welfare = 0.0;
    double accuracy = 0.0;
    double avg_noise = 0.0;
    std::size_t sweeps = 0;  ///< full passes over the clients, the last possibly partial
    bool converged = false;
};

struct NeOptions {
    double convg_thresh = 1e-8;
    std::size_t max_sweeps = 100000;
};

/// d P_n / d x_n = ((w_n / (N d_bar)) g'(xbar) - f'(x_n)) d_n. Strictly decreasing in x_n.
double h_ne(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

/// Payoff-maximizing x_n given x_{-n}; the current x_n entry is ignored.
/// Returns eps_n when h_ne(eps_n) >= 0, otherwise the zero of h_ne in [floor, eps_n].
double best_response(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

/// Gauss-Seidel best response starting from x = eps. Clients are visited in index
/// order; the iteration stops once N consecutive updates each move by at most
/// convg_thresh. Throws NonConvergence (with the last profile) past max_sweeps.
NeReport solve_ne(const GameInstance& instance, const NeOptions& options = {});

/// Same iteration from an arbitrary feasible starting profile.
NeReport solve_ne_from(const GameInstance& instance, StrategyProfile start, const NeOptions& options = {});

/// Unclamped zero of x -> h_ne(n, (x, x_{-n})) on (0, inf), ignoring the box.
double interior_zero_ne(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

}  // namespace denoise
