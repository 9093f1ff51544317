#include "denoise/ne.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "denoise/errors.hpp"
#include "internal.hpp"

namespace denoise {

namespace {

double ne_marginal(const GameInstance& instance, std::size_t n, double xbar, double x) {
    const auto& client = instance.clients()[n];
    const double share = client.w / instance.total_d();
    return (share * instance.accuracy().slope(xbar) - instance.cost().derivative(x)) * client.d;
}

double best_response_unchecked(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    const auto& client = instance.clients()[n];
    const double eps = client.epsilon;
    if (eps == 0.0) return 0.0;

    const double floor = instance.lower_bound(n);

    // Linear g decouples the clients: h_ne = (w_n kappa / (N d_bar) - c / x) d_n.
    const auto* linear = std::get_if<LinearAccuracy>(&instance.accuracy().form());
    const auto* log_cost = std::get_if<LogCost>(&instance.cost().form());
    if (linear != nullptr && log_cost != nullptr) {
        const double zero = log_cost->c * instance.total_d() / (client.w * linear->kappa);
        return std::clamp(zero, floor, eps);
    }

    // Others' contribution to the weighted noise sum is fixed during the search.
    double others = 0.0;
    for (std::size_t m = 0; m < instance.size(); ++m)
        if (m != n) others += instance.clients()[m].d * profile[m];
    auto h = [&](double x) { return ne_marginal(instance, n, (others + client.d * x) / instance.total_d(), x); };

    if (h(eps) >= 0.0) return eps;
    if (h(floor) <= 0.0) return floor;
    return detail::bisect_decreasing(h, floor, eps);
}

}  // namespace

double h_ne(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    instance.client(n);
    const double xbar = average_noise_rate(instance, profile);
    return ne_marginal(instance, n, xbar, detail::derivative_point(instance, n, profile[n]));
}

double best_response(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    instance.client(n);
    check_feasible(instance, profile);
    return best_response_unchecked(instance, n, profile);
}

NeReport solve_ne(const GameInstance& instance, const NeOptions& options) {
    return solve_ne_from(instance, instance.epsilon_profile(), options);
}

NeReport solve_ne_from(const GameInstance& instance, StrategyProfile start, const NeOptions& options) {
    if (!(options.convg_thresh > 0.0)) throw InvalidInput("convergence threshold must be positive");
    if (options.max_sweeps == 0) throw InvalidInput("max_sweeps must be positive");
    check_feasible(instance, start);

    const std::size_t count = instance.size();
    NeReport report;
    report.profile = std::move(start);

    std::size_t stable = 0;  // consecutive clients whose update stayed within the threshold
    std::size_t steps = 0;
    while (stable < count) {
        if (steps == options.max_sweeps * count)
            throw NonConvergence("best response did not converge within " + std::to_string(options.max_sweeps) +
                                     " sweeps",
                                 report.profile.x);
        const std::size_t n = steps % count;
        const double next = best_response_unchecked(instance, n, report.profile);
        if (std::abs(next - report.profile[n]) > options.convg_thresh)
            stable = 0;
        report.profile[n] = next;
        ++stable;
        ++steps;
    }

    report.sweeps = (steps + count - 1) / count;
    report.converged = true;
    report.welfare = social_welfare(instance, report.profile);
    report.avg_noise = average_noise_rate(instance, report.profile);
    report.accuracy = instance.accuracy().value(report.avg_noise);
    return report;
}

double interior_zero_ne(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    const auto& client = instance.client(n);
    check_feasible(instance, profile);
    auto h = [&](double x) { return ne_marginal(instance, n, detail::xbar_with(instance, profile, n, x), x); };
    return detail::unbounded_zero(h, std::max(client.epsilon, 1e-3));
}

}  // namespace denoise
