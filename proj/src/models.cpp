#include "denoise/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "denoise/errors.hpp"

namespace denoise {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidInput(message);
}

// Strategy at which cost is evaluated: pinned clients sit at 0, others are floored.
double cost_point(const CostModel& cost, const ClientParams& client, double x) {
    return std::min(std::max(x, cost.floor(client.epsilon)), client.epsilon);
}

}  // namespace

void validate(const ClientParams& client) {
    require(std::isfinite(client.w) && client.w > 0.0, "client w must be positive");
    require(std::isfinite(client.d) && client.d > 0.0, "client d must be positive");
    require(client.epsilon >= 0.0 && client.epsilon <= 1.0, "client epsilon must lie in [0, 1]");
}

AccuracyModel::AccuracyModel(LinearAccuracy form) : form_(form) {
    require(std::isfinite(form.kappa) && form.kappa < 0.0, "linear accuracy requires kappa < 0");
    require(form.g0 > 0.0 && form.g0 <= 1.0, "accuracy g0 must lie in (0, 1]");
}

AccuracyModel::AccuracyModel(QuadraticAccuracy form) : form_(form) {
    require(std::isfinite(form.g2) && form.g2 < 0.0, "quadratic accuracy requires g2 < 0");
    require(std::isfinite(form.g1) && form.g1 < 0.0, "quadratic accuracy requires g1 < 0");
    require(form.g0 > 0.0 && form.g0 <= 1.0, "accuracy g0 must lie in (0, 1]");
}

double AccuracyModel::value(double xbar) const {
    return std::visit(overloaded{
                          [&](const LinearAccuracy& g) { return g.kappa * xbar + g.g0; },
                          [&](const QuadraticAccuracy& g) { return (g.g2 * xbar + g.g1) * xbar + g.g0; },
                      },
                      form_);
}

double AccuracyModel::slope(double xbar) const {
    return std::visit(overloaded{
                          [](const LinearAccuracy& g) { return g.kappa; },
                          [&](const QuadraticAccuracy& g) { return 2.0 * g.g2 * xbar + g.g1; },
                      },
                      form_);
}

double AccuracyModel::curvature() const {
    return std::visit(overloaded{
                          [](const LinearAccuracy&) { return 0.0; },
                          [](const QuadraticAccuracy& g) { return 2.0 * g.g2; },
                      },
                      form_);
}

double AccuracyModel::difference(double xbar_to, double xbar_from) const {
    const double delta = xbar_to - xbar_from;
    return std::visit(overloaded{
                          [&](const LinearAccuracy& g) { return g.kappa * delta; },
                          [&](const QuadraticAccuracy& g) {
                              return delta * (g.g2 * (xbar_to + xbar_from) + g.g1);
                          },
                      },
                      form_);
}

CostModel::CostModel(LogCost form) : form_(form) {
    require(std::isfinite(form.c) && form.c < 0.0, "log cost requires c < 0");
}

double CostModel::value(double x) const {
    return std::visit([&](const LogCost& f) { return f.c * std::log(x); }, form_);
}

double CostModel::derivative(double x) const {
    return std::visit([&](const LogCost& f) { return f.c / x; }, form_);
}

double CostModel::second_derivative(double x) const {
    return std::visit([&](const LogCost& f) { return -f.c / (x * x); }, form_);
}

double CostModel::difference(double x_to, double x_from) const {
    return std::visit([&](const LogCost& f) { return f.c * std::log1p((x_to - x_from) / x_from); }, form_);
}

double CostModel::floor(double epsilon) const {
    return std::max(1e-9, 1e-6 * epsilon);
}

GameInstance::GameInstance(std::vector<ClientParams> clients, AccuracyModel accuracy, CostModel cost)
    : clients_(std::move(clients)), accuracy_(std::move(accuracy)), cost_(std::move(cost)) {
    require(!clients_.empty(), "a game needs at least one client");
    double w_sum = 0.0;
    for (const auto& c : clients_) {
        validate(c);
        w_sum += c.w;
        total_d_ += c.d;
        max_epsilon_ = std::max(max_epsilon_, c.epsilon);
    }
    const auto n = static_cast<double>(clients_.size());
    w_bar_ = w_sum / n;
    d_bar_ = total_d_ / n;

    // g is concave and decreasing, so its extremes on [0, max eps] are the endpoints.
    const double top = accuracy_.value(0.0);
    const double bottom = accuracy_.value(max_epsilon_);
    require(top <= 1.0 && bottom > 0.0,
            "accuracy model leaves (0, 1] on [0, " + std::to_string(max_epsilon_) + "]");
}

const ClientParams& GameInstance::client(std::size_t n) const {
    if (n >= clients_.size())
        throw InvalidInput("client index " + std::to_string(n) + " out of range for " +
                           std::to_string(clients_.size()) + " clients");
    return clients_[n];
}

double GameInstance::lower_bound(std::size_t n) const {
    const double eps = client(n).epsilon;
    return eps == 0.0 ? 0.0 : std::min(cost_.floor(eps), eps);
}

StrategyProfile GameInstance::epsilon_profile() const {
    std::vector<double> x;
    x.reserve(clients_.size());
    for (const auto& c : clients_) x.push_back(c.epsilon);
    return StrategyProfile(std::move(x));
}

void check_feasible(const GameInstance& instance, const StrategyProfile& profile) {
    if (profile.size() != instance.size())
        throw InvalidInput("profile has " + std::to_string(profile.size()) + " entries, game has " +
                           std::to_string(instance.size()) + " clients");
    for (std::size_t n = 0; n < profile.size(); ++n) {
        const double x = profile[n];
        const double eps = instance.clients()[n].epsilon;
        if (!(x >= 0.0 && x <= eps))
            throw InfeasibleStrategy("x[" + std::to_string(n) + "] = " + std::to_string(x) +
                                     " outside [0, " + std::to_string(eps) + "]");
    }
}

double average_noise_rate(const GameInstance& instance, const StrategyProfile& profile) {
    check_feasible(instance, profile);
    double weighted = 0.0;
    for (std::size_t n = 0; n < profile.size(); ++n) weighted += instance.clients()[n].d * profile[n];
    return weighted / instance.total_d();
}

double correction_cost(const CostModel& cost, const ClientParams& client, double x) {
    if (!(x >= 0.0 && x <= client.epsilon))
        throw InfeasibleStrategy("strategy " + std::to_string(x) + " outside [0, " +
                                 std::to_string(client.epsilon) + "]");
    if (client.epsilon == 0.0 || x == client.epsilon) return 0.0;
    return client.d * cost.difference(cost_point(cost, client, x), client.epsilon);
}

double payoff(const GameInstance& instance, std::size_t n, const StrategyProfile& profile) {
    const auto& client = instance.client(n);
    const double xbar = average_noise_rate(instance, profile);
    return client.w * instance.accuracy().value(xbar) - correction_cost(instance.cost(), client, profile[n]);
}

double social_welfare(const GameInstance& instance, const StrategyProfile& profile) {
    double total = 0.0;
    for (std::size_t n = 0; n < instance.size(); ++n) total += payoff(instance, n, profile);
    return total;
}

double welfare_difference(const GameInstance& instance, const StrategyProfile& to,
                          const StrategyProfile& from) {
    const double xbar_to = average_noise_rate(instance, to);
    const double xbar_from = average_noise_rate(instance, from);
    const auto& cost = instance.cost();

    double delta = instance.w_bar() * static_cast<double>(instance.size()) *
                   instance.accuracy().difference(xbar_to, xbar_from);
    for (std::size_t n = 0; n < instance.size(); ++n) {
        const auto& client = instance.clients()[n];
        if (client.epsilon == 0.0) continue;
        const double a = cost_point(cost, client, to[n]);
        const double b = cost_point(cost, client, from[n]);
        if (a != b) delta -= client.d * cost.difference(a, b);
    }
    return delta;
}

}  // namespace denoise
