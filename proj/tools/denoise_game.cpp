// Command-line front end: solve a single instance, run a parameter sweep,
// or check an instance against the brute-force oracle.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "denoise/errors.hpp"
#include "denoise/experiment.hpp"
#include "denoise/ne.hpp"
#include "denoise/oracle.hpp"
#include "denoise/pos.hpp"
#include "denoise/swm.hpp"

namespace {

using nlohmann::json;
using namespace denoise;

json to_json(const SwmReport& r) {
    return {{"theta", r.theta},
            {"profile", r.profile.x},
            {"welfare", r.welfare},
            {"accuracy", r.accuracy},
            {"avg_noise", r.avg_noise},
            {"ternary_iterations", r.ternary_iterations}};
}

json to_json(const NeReport& r) {
    return {{"profile", r.profile.x}, {"welfare", r.welfare},   {"accuracy", r.accuracy},
            {"avg_noise", r.avg_noise}, {"sweeps", r.sweeps}, {"converged", r.converged}};
}

json to_json(const PosReport& r) {
    return {{"swm", to_json(r.swm)},
            {"ne", to_json(r.ne)},
            {"pos_welfare", r.pos_welfare},
            {"accuracy_gap", r.accuracy_gap},
            {"noise_gap", r.noise_gap}};
}

std::string join(const StrategyProfile& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + format_decimal(p[i]);
    return out + ")";
}

void print_text(const SwmReport& r) {
    std::cout << "social optimum\n"
              << "  theta              " << format_decimal(r.theta) << '\n'
              << "  profile            " << join(r.profile) << '\n'
              << "  welfare            " << format_decimal(r.welfare) << '\n'
              << "  accuracy           " << format_decimal(r.accuracy) << '\n'
              << "  avg_noise          " << format_decimal(r.avg_noise) << '\n'
              << "  ternary_iterations " << r.ternary_iterations << '\n';
}

void print_text(const NeReport& r) {
    std::cout << "nash equilibrium\n"
              << "  profile            " << join(r.profile) << '\n'
              << "  welfare            " << format_decimal(r.welfare) << '\n'
              << "  accuracy           " << format_decimal(r.accuracy) << '\n'
              << "  avg_noise          " << format_decimal(r.avg_noise) << '\n'
              << "  sweeps             " << r.sweeps << '\n'
              << "  converged          " << (r.converged ? "true" : "false") << '\n';
}

void print_text(const PosReport& r) {
    print_text(r.swm);
    print_text(r.ne);
    std::cout << "price of stability\n"
              << "  pos_welfare        " << format_decimal(r.pos_welfare) << '\n'
              << "  accuracy_gap       " << format_decimal(r.accuracy_gap) << '\n'
              << "  noise_gap          " << format_decimal(r.noise_gap) << '\n';
}

template <class Report>
void emit(const Report& report, bool as_json) {
    if (as_json)
        std::cout << to_json(report).dump(2) << '\n';
    else
        print_text(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Social optimum, Nash equilibrium and price of stability for the label-denoising game"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode = "pos";
    bool as_json = false;
    auto* solve = app.add_subcommand("solve", "Solve the configured instance");
    solve->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    solve->add_option("--mode", mode, "swm, ne or pos")->check(CLI::IsMember({"swm", "ne", "pos"}));
    solve->add_flag("--json", as_json, "Emit the report as JSON");

    std::string out_path;
    auto* sweep = app.add_subcommand("sweep", "Run the configured sweep and write a CSV");
    sweep->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_path, "CSV destination")->required();

    double grid_step = 1e-3;
    auto* oracle = app.add_subcommand("oracle", "Check the solvers against brute force");
    oracle->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--grid-step", grid_step, "Grid spacing")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = load_config(config_path);

        if (*solve) {
            const auto instance = base_instance(config);
            if (mode == "swm")
                emit(solve_swm(instance, config.solver.mu), as_json);
            else if (mode == "ne")
                emit(solve_ne(instance, config.solver.ne), as_json);
            else
                emit(compare(instance, config.solver.mu, config.solver.ne), as_json);
        } else if (*sweep) {
            const auto rows = run_sweep(config);
            emit_csv(rows, std::filesystem::path(out_path));
            std::cout << "wrote " << rows.size() << " rows to " << out_path << '\n';
        } else if (*oracle) {
            const auto instance = base_instance(config);
            const auto swm = solve_swm(instance, config.solver.mu);
            const auto ne = solve_ne(instance, config.solver.ne);
            const auto brute = brute_force_swm(instance, grid_step);
            const auto lipschitz = welfare_lipschitz_bound(instance);
            const auto check = verify_ne(instance, ne.profile, grid_step);
            const bool unimodal = check_unimodal(instance, 1000);
            const bool dominates = swm.welfare >= brute.welfare - lipschitz * grid_step;

            std::cout << "brute force optimum " << join(brute.profile) << " welfare " << format_decimal(brute.welfare)
                      << '\n'
                      << "solver optimum      " << join(swm.profile) << " welfare " << format_decimal(swm.welfare)
                      << '\n'
                      << "solver >= grid - L*step: " << (dominates ? "yes" : "NO") << '\n'
                      << "equilibrium " << join(ne.profile) << " max grid gain " << format_decimal(check.max_gain)
                      << ": " << (check.ok ? "ok" : "NOT an equilibrium") << '\n'
                      << "H(theta) unimodal on 1000 points: " << (unimodal ? "yes" : "NO") << '\n';
            if (!(dominates && check.ok && unimodal)) return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
