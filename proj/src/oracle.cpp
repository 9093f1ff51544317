#include "denoise/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "denoise/errors.hpp"
#include "denoise/swm.hpp"

namespace denoise {

namespace {

constexpr std::size_t kMaxClients = 4;
constexpr double kMaxGridPoints = 1e7;

std::vector<double> client_grid(const GameInstance& instance, std::size_t n, double step) {
    const double eps = instance.clients()[n].epsilon;
    if (eps == 0.0) return {0.0};
    const double lo = instance.lower_bound(n);
    std::vector<double> grid{lo};
    for (std::size_t k = 1;; ++k) {
        const double x = static_cast<double>(k) * step;
        if (x >= eps) break;
        if (x > lo) grid.push_back(x);
    }
    if (grid.back() != eps) grid.push_back(eps);
    return grid;
}

}  // namespace

BruteForceResult brute_force_swm(const GameInstance& instance, double grid_step) {
    if (!(grid_step > 0.0)) throw InvalidInput("grid step must be positive");
    const std::size_t count = instance.size();
    if (count > kMaxClients)
        throw BudgetExceeded("brute force handles at most " + std::to_string(kMaxClients) + " clients, got " +
                             std::to_string(count));

    // Size the enumeration before building anything.
    double points = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
        const double eps = instance.clients()[n].epsilon;
        points *= eps == 0.0 ? 1.0 : std::floor(eps / grid_step) + 2.0;
    }
    if (points > kMaxGridPoints)
        throw BudgetExceeded("grid of ~" + std::to_string(static_cast<long long>(points)) +
                             " profiles exceeds the 1e7 budget; use a coarser step than " +
                             std::to_string(grid_step));

    std::vector<std::vector<double>> grids(count);
    std::vector<std::vector<double>> mass(count);  // d_n x
    std::vector<std::vector<double>> cost(count);  // d_n (f(x) - f(eps_n))
    double revenue = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
        const auto& client = instance.clients()[n];
        revenue += client.w;
        grids[n] = client_grid(instance, n, grid_step);
        for (double x : grids[n]) {
            mass[n].push_back(client.d * x);
            const bool free = client.epsilon == 0.0 || x == client.epsilon;
            cost[n].push_back(free ? 0.0
                                   : client.d * (instance.cost().value(x) - instance.cost().value(client.epsilon)));
        }
    }

    // Odometer over the grid, last client fastest: lexicographic order.
    std::vector<std::size_t> index(count, 0);
    std::vector<std::size_t> best_index(count, 0);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        double weighted = 0.0;
        double total_cost = 0.0;
        for (std::size_t n = 0; n < count; ++n) {
            weighted += mass[n][index[n]];
            total_cost += cost[n][index[n]];
        }
        const double welfare = revenue * instance.accuracy().value(weighted / instance.total_d()) - total_cost;
        if (welfare > best) {
            best = welfare;
            best_index = index;
        }

        std::size_t k = count;
        while (k > 0 && ++index[k - 1] == grids[k - 1].size()) {
            index[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }

    BruteForceResult result;
    result.profile.x.resize(count);
    for (std::size_t n = 0; n < count; ++n) result.profile[n] = grids[n][best_index[n]];
    result.welfare = best;
    return result;
}

NeVerification verify_ne(const GameInstance& instance, const StrategyProfile& profile, double grid_step) {
    if (!(grid_step > 0.0)) throw InvalidInput("grid step must be positive");
    check_feasible(instance, profile);

    double payoff_scale = 0.0;
    double curvature = 0.0;
    double max_gain = -std::numeric_limits<double>::infinity();

    for (std::size_t n = 0; n < instance.size(); ++n) {
        const auto& client = instance.clients()[n];
        const double current = payoff(instance, n, profile);
        payoff_scale = std::max(payoff_scale, std::abs(current));

        if (client.epsilon > 0.0) {
            const double share = client.d / instance.total_d();
            const double x = std::max(profile[n], instance.lower_bound(n));
            const double second = client.w * share * share * instance.accuracy().curvature() -
                                  client.d * instance.cost().second_derivative(x);
            curvature = std::max(curvature, 0.5 * std::abs(second));
        }

        StrategyProfile deviation = profile;
        for (double x : client_grid(instance, n, grid_step)) {
            deviation[n] = x;
            max_gain = std::max(max_gain, payoff(instance, n, deviation) - current);
        }
    }

    NeVerification out;
    out.max_gain = max_gain;
    out.ok = max_gain <= 1e-6 * (1.0 + payoff_scale) + curvature * grid_step * grid_step;
    return out;
}

bool check_unimodal(const GameInstance& instance, std::size_t grid_points) {
    if (grid_points < 3) throw InvalidInput("unimodality check needs at least 3 grid points");
    const double top = instance.max_epsilon();
    if (top == 0.0) return true;

    std::vector<double> values(grid_points);
    double scale = 0.0;
    for (std::size_t k = 0; k < grid_points; ++k) {
        const double theta = top * static_cast<double>(k) / static_cast<double>(grid_points - 1);
        values[k] = welfare_of_threshold(instance, theta);
        scale = std::max(scale, std::abs(values[k]));
    }

    const double tolerance = 1e-9 * scale;
    bool falling = false;
    for (std::size_t k = 1; k < grid_points; ++k) {
        const double step = values[k] - values[k - 1];
        if (step < -tolerance)
            falling = true;
        else if (step > tolerance && falling)
            return false;
    }
    return true;
}

double welfare_lipschitz_bound(const GameInstance& instance) {
    const std::size_t count = instance.size();
    if (count > 20) throw InvalidInput("corner enumeration limited to 20 clients");

    double bound = 0.0;
    StrategyProfile corner(std::vector<double>(count, 0.0));
    for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
        for (std::size_t n = 0; n < count; ++n)
            corner[n] = (mask >> n) & 1U ? instance.clients()[n].epsilon : instance.lower_bound(n);
        double norm = 0.0;
        for (std::size_t n = 0; n < count; ++n)
            if (instance.clients()[n].epsilon > 0.0) norm += std::abs(h_swm(instance, n, corner));
        bound = std::max(bound, norm);
    }
    return bound;
}

}  // namespace denoise
