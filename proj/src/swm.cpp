#include "denoise/swm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "denoise/errors.hpp"
#include "internal.hpp"

namespace denoise {

namespace {

double swm_marginal(const GameInstance& instance, std::size_t n, double xbar, double x) {
    const double d = instance.clients()[n].d;
    const double share = instance.w_bar() / instance.d_bar();
    return (share * instance.accuracy().slope(xbar) - instance.cost().derivative(x)) * d;
}

// Threshold profile with the cost floor applied before clamping to eps_n.
StrategyProfile floored_threshold_profile(const GameInstance& instance, double theta) {
    std::vector<double> x(instance.size());
    for (std::size_t n = 0; n < instance.size(); ++n) {
        const double eps = instance.clients()[n].epsilon;
        x[n] = std::min(std::max(theta, instance.cost().floor(eps)), eps);
    }
    return StrategyProfile(std::move(x));
}

}  // namespace

double h_swm(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    instance.client(n);
    const double xbar = average_noise_rate(instance, profile);
    return swm_marginal(instance, n, xbar, detail::derivative_point(instance, n, profile[n]));
}

StrategyProfile profile_from_threshold(const GameInstance& instance, double theta) {
    if (!(theta >= 0.0)) throw InvalidInput("threshold must be non-negative");
    std::vector<double> x(instance.size());
    for (std::size_t n = 0; n < instance.size(); ++n) x[n] = std::min(theta, instance.clients()[n].epsilon);
    return StrategyProfile(std::move(x));
}

double welfare_of_threshold(const GameInstance& instance, double theta) {
    return social_welfare(instance, floored_threshold_profile(instance, theta));
}

SwmReport solve_swm(const GameInstance& instance, double mu) {
    if (!(mu > 0.0)) throw InvalidInput("mu must be positive");

    SwmReport report;
    const double top = instance.max_epsilon();
    if (top > 0.0) {
        // Candidates are compared through welfare_difference: near the optimum H is flat and
        // subtracting two evaluated welfares loses the sign long before the bracket reaches mu.
        auto better_or_equal = [&](double a, double b) {
            return welfare_difference(instance, floored_threshold_profile(instance, a),
                                      floored_threshold_profile(instance, b)) >= 0.0;
        };

        double lo = 0.0;
        double hi = top;
        while (hi - lo > mu) {
            const double third = (hi - lo) / 3.0;
            const double m1 = lo + third;
            const double m2 = hi - third;
            if (better_or_equal(m2, m1))
                lo = m1;
            else
                hi = m2;
            ++report.ternary_iterations;
        }
        double theta = lo + 0.5 * (hi - lo);

        // Snap to the ends of the range. Ties go to the upper end (no correction).
        if (better_or_equal(top, theta))
            theta = top;
        else if (!better_or_equal(theta, 0.0))
            theta = 0.0;
        report.theta = theta;
    }

    report.profile = profile_from_threshold(instance, report.theta);
    report.welfare = social_welfare(instance, report.profile);
    report.avg_noise = average_noise_rate(instance, report.profile);
    report.accuracy = instance.accuracy().value(report.avg_noise);
    return report;
}

double interior_zero_swm(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    const auto& client = instance.client(n);
    check_feasible(instance, profile);
    auto h = [&](double x) { return swm_marginal(instance, n, detail::xbar_with(instance, profile, n, x), x); };
    return detail::unbounded_zero(h, std::max(client.epsilon, 1e-3));
}

}  // namespace denoise
