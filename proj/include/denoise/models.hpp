// Domain types and payoff arithmetic for the label-denoising game.
//
// N clients hold datasets of size d_n with initial label-noise rate eps_n.
// Each picks a post-correction noise rate x_n in [0, eps_n]. The global
// model accuracy depends on the profile only through the size-weighted
// average noise rate xbar, via a concave decreasing map g. Client n earns
// w_n * g(xbar) and pays d_n * (f(x_n) - f(eps_n)) for correction, where f
// is strictly convex and decreasing.

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace denoise {

struct ClientParams {
    double w = 0.0;        ///< revenue per unit of model accuracy, > 0
    double d = 0.0;        ///< dataset size, > 0 (real-valued)
    double epsilon = 0.0;  ///< initial noise rate in [0, 1]
};

/// Throws InvalidInput if any field is outside its domain.
void validate(const ClientParams& client);

/// g(xbar) = kappa * xbar + g0. Random label flipping.
struct LinearAccuracy {
    double kappa = -0.5;
    double g0 = 0.95;
};

/// g(xbar) = g2 * xbar^2 + g1 * xbar + g0. Instance-dependent noise.
struct QuadraticAccuracy {
    double g2 = -2.0;
    double g1 = -0.1;
    double g0 = 0.95;
};

/// Concave, decreasing map from average noise rate to global-model accuracy.
class AccuracyModel {
public:
    using Form = std::variant<LinearAccuracy, QuadraticAccuracy>;

    /// Default stand-in: linear with kappa = -0.5, g0 = 0.95.
    AccuracyModel() : AccuracyModel(LinearAccuracy{}) {}
    explicit AccuracyModel(LinearAccuracy form);
    explicit AccuracyModel(QuadraticAccuracy form);

    static AccuracyModel linear(double kappa, double g0) { return AccuracyModel(LinearAccuracy{kappa, g0}); }
    static AccuracyModel quadratic(double g2, double g1, double g0) {
        return AccuracyModel(QuadraticAccuracy{g2, g1, g0});
    }

    double value(double xbar) const;
    double slope(double xbar) const;
    /// Second derivative (constant for both families).
    double curvature() const;
    /// g(to) - g(from), factored so that nearby arguments do not cancel.
    double difference(double xbar_to, double xbar_from) const;

    bool is_linear() const noexcept { return std::holds_alternative<LinearAccuracy>(form_); }
    const Form& form() const noexcept { return form_; }

private:
    Form form_;
};

/// f(x) = c * ln(x), c < 0.
struct LogCost {
    double c = -1.0;
};

/// Per-sample correction cost primitive f: strictly convex, decreasing, differentiable on (0, 1].
class CostModel {
public:
    using Form = std::variant<LogCost>;

    CostModel() : CostModel(LogCost{}) {}
    explicit CostModel(LogCost form);

    static CostModel log(double c) { return CostModel(LogCost{c}); }

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    /// f(to) - f(from) without cancellation for nearby arguments.
    double difference(double x_to, double x_from) const;

    /// Lowest strategy evaluated for a client with noise rate epsilon.
    /// f diverges at 0, so strategies are floored at max(1e-9, 1e-6 * epsilon).
    double floor(double epsilon) const;

    const Form& form() const noexcept { return form_; }

private:
    Form form_;
};

/// Post-correction noise rates, one per client.
struct StrategyProfile {
    std::vector<double> x;

    StrategyProfile() = default;
    explicit StrategyProfile(std::vector<double> values) : x(std::move(values)) {}

    std::size_t size() const noexcept { return x.size(); }
    double operator[](std::size_t n) const { return x[n]; }
    double& operator[](std::size_t n) { return x[n]; }

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

/// Client roster plus accuracy and cost models. Immutable after construction.
class GameInstance {
public:
    /// Validates every client and the accuracy model over [0, max eps_n].
    GameInstance(std::vector<ClientParams> clients, AccuracyModel accuracy, CostModel cost);

    std::size_t size() const noexcept { return clients_.size(); }
    std::span<const ClientParams> clients() const noexcept { return clients_; }
    /// Bounds-checked access; throws InvalidInput.
    const ClientParams& client(std::size_t n) const;

    const AccuracyModel& accuracy() const noexcept { return accuracy_; }
    const CostModel& cost() const noexcept { return cost_; }

    double w_bar() const noexcept { return w_bar_; }
    double d_bar() const noexcept { return d_bar_; }
    double total_d() const noexcept { return total_d_; }
    double max_epsilon() const noexcept { return max_epsilon_; }

    /// Smallest strategy client n can take: 0 if pinned (eps_n = 0), else the cost floor.
    double lower_bound(std::size_t n) const;
    /// Clients with eps_n = 0 have the single strategy {0}.
    bool pinned(std::size_t n) const { return client(n).epsilon == 0.0; }

    /// The no-correction profile x = eps.
    StrategyProfile epsilon_profile() const;

private:
    std::vector<ClientParams> clients_;
    AccuracyModel accuracy_;
    CostModel cost_;
    double w_bar_ = 0.0;
    double d_bar_ = 0.0;
    double total_d_ = 0.0;
    double max_epsilon_ = 0.0;
};

/// Throws InvalidInput on size mismatch and InfeasibleStrategy outside the box prod [0, eps_n].
void check_feasible(const GameInstance& instance, const StrategyProfile& profile);

double average_noise_rate(const GameInstance& instance, const StrategyProfile& profile);

inline double accuracy(const AccuracyModel& model, double xbar) { return model.value(xbar); }
inline double accuracy_slope(const AccuracyModel& model, double xbar) { return model.slope(xbar); }

/// d * (f(x) - f(eps)). Zero at x = eps and for pinned clients; x below the
/// cost floor is charged at the floor.
double correction_cost(const CostModel& cost, const ClientParams& client, double x);

double payoff(const GameInstance& instance, std::size_t n, const StrategyProfile& profile);

/// Sum of all payoffs.
double social_welfare(const GameInstance& instance, const StrategyProfile& profile);

/// SW(to) - SW(from), accumulated term by term so that the sign is reliable
/// when the two profiles are close. Used to compare candidates in the solvers.
double welfare_difference(const GameInstance& instance, const StrategyProfile& to,
                          const StrategyProfile& from);

}  // namespace denoise
