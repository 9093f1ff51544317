#include "denoise/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "denoise/errors.hpp"

namespace denoise {

namespace {

using json = nlohmann::json;

void reject_unknown_keys(const json& object, std::string_view where, std::initializer_list<std::string_view> known) {
    if (!object.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& [key, value] : object.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
}

double number(const json& object, const char* key, std::string_view where) {
    if (!object.contains(key)) throw ConfigError(std::string(where) + "." + key + " is required");
    const auto& value = object.at(key);
    if (!value.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
    return value.get<double>();
}

double number_or(const json& object, const char* key, std::string_view where, double fallback) {
    return object.contains(key) ? number(object, key, where) : fallback;
}

std::uint64_t unsigned_integer(const json& value, std::string_view where) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
        throw ConfigError(std::string(where) + " must be a non-negative integer");
    return value.get<std::uint64_t>();
}

ClientParams parse_client(const json& node, std::size_t index) {
    const std::string where = "clients[" + std::to_string(index) + "]";
    reject_unknown_keys(node, where, {"w", "d", "epsilon"});
    ClientParams client{number(node, "w", where), number(node, "d", where), number(node, "epsilon", where)};
    try {
        validate(client);
    } catch (const InvalidInput& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return client;
}

RevenueDistribution parse_distribution(const json& node) {
    constexpr std::string_view where = "generator.w_dist";
    reject_unknown_keys(node, where, {"mean", "std", "lo", "hi"});
    RevenueDistribution dist{number(node, "mean", where), number(node, "std", where), number(node, "lo", where),
                             number(node, "hi", where)};
    if (!(dist.lo < dist.hi)) throw ConfigError("generator.w_dist requires lo < hi");
    if (!(dist.std > 0.0)) throw ConfigError("generator.w_dist requires std > 0");
    if (!(dist.lo > 0.0)) throw ConfigError("generator.w_dist requires lo > 0 (revenues are positive)");
    return dist;
}

ClientGenerator parse_generator(const json& node) {
    constexpr std::string_view where = "generator";
    reject_unknown_keys(node, where, {"n", "d", "epsilon", "w_dist"});
    ClientGenerator gen;
    if (!node.contains("n")) throw ConfigError("generator.n is required");
    gen.n = unsigned_integer(node.at("n"), "generator.n");
    if (gen.n == 0) throw ConfigError("generator.n must be at least 1");
    gen.d = number(node, "d", where);
    if (!(gen.d > 0.0)) throw ConfigError("generator.d must be positive");

    if (node.contains("epsilon")) {
        const auto& eps = node.at("epsilon");
        if (eps.is_number()) {
            gen.epsilon = {eps.get<double>()};
        } else if (eps.is_array()) {
            for (const auto& v : eps) {
                if (!v.is_number()) throw ConfigError("generator.epsilon entries must be numbers");
                gen.epsilon.push_back(v.get<double>());
            }
            if (gen.epsilon.size() != gen.n)
                throw ConfigError("generator.epsilon list must have n entries");
        } else {
            throw ConfigError("generator.epsilon must be a number or a list");
        }
        for (double e : gen.epsilon)
            if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("generator.epsilon values must lie in [0, 1]");
    }
    if (node.contains("w_dist")) gen.w_dist = parse_distribution(node.at("w_dist"));
    return gen;
}

AccuracyModel parse_accuracy(const json& node) {
    constexpr std::string_view where = "accuracy";
    if (!node.is_object() || !node.contains("type") || !node.at("type").is_string())
        throw ConfigError("accuracy.type must be \"linear\" or \"quadratic\"");
    const auto type = node.at("type").get<std::string>();
    try {
        if (type == "linear") {
            reject_unknown_keys(node, where, {"type", "kappa", "g0"});
            const LinearAccuracy defaults;
            return AccuracyModel::linear(number_or(node, "kappa", where, defaults.kappa),
                                         number_or(node, "g0", where, defaults.g0));
        }
        if (type == "quadratic") {
            reject_unknown_keys(node, where, {"type", "g2", "g1", "g0"});
            const QuadraticAccuracy defaults;
            return AccuracyModel::quadratic(number_or(node, "g2", where, defaults.g2),
                                            number_or(node, "g1", where, defaults.g1),
                                            number_or(node, "g0", where, defaults.g0));
        }
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("accuracy: ") + e.what());
    }
    throw ConfigError("accuracy.type must be \"linear\" or \"quadratic\", got \"" + type + "\"");
}

CostModel parse_cost(const json& node) {
    constexpr std::string_view where = "cost";
    reject_unknown_keys(node, where, {"type", "c"});
    if (node.contains("type") && node.at("type") != "log") throw ConfigError("cost.type must be \"log\"");
    try {
        return CostModel::log(number_or(node, "c", where, LogCost{}.c));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("cost: ") + e.what());
    }
}

SolverParams parse_solver(const json& node) {
    constexpr std::string_view where = "solver";
    reject_unknown_keys(node, where, {"mu", "convg_thresh", "max_sweeps"});
    SolverParams params;
    params.mu = number_or(node, "mu", where, params.mu);
    params.ne.convg_thresh = number_or(node, "convg_thresh", where, params.ne.convg_thresh);
    if (node.contains("max_sweeps")) params.ne.max_sweeps = unsigned_integer(node.at("max_sweeps"), "solver.max_sweeps");
    if (!(params.mu > 0.0)) throw ConfigError("solver.mu must be positive");
    if (!(params.ne.convg_thresh > 0.0)) throw ConfigError("solver.convg_thresh must be positive");
    if (params.ne.max_sweeps == 0) throw ConfigError("solver.max_sweeps must be positive");
    return params;
}

SweepSpec parse_sweep(const json& node) {
    reject_unknown_keys(node, "sweep", {"parameter", "values"});
    SweepSpec sweep;
    if (!node.contains("parameter") || !node.at("parameter").is_string())
        throw ConfigError("sweep.parameter must be \"epsilon\" or \"w\"");
    const auto parameter = node.at("parameter").get<std::string>();
    if (parameter == "epsilon")
        sweep.parameter = SweepParameter::epsilon;
    else if (parameter == "w")
        sweep.parameter = SweepParameter::w;
    else
        throw ConfigError("sweep.parameter must be \"epsilon\" or \"w\", got \"" + parameter + "\"");

    if (!node.contains("values") || !node.at("values").is_array() || node.at("values").empty())
        throw ConfigError("sweep.values must be a non-empty list");
    for (const auto& v : node.at("values")) {
        if (!v.is_number()) throw ConfigError("sweep.values entries must be numbers");
        sweep.values.push_back(v.get<double>());
    }
    return sweep;
}

// Cross-field checks that need the whole document.
void check_consistency(const ExperimentConfig& config) {
    const auto* gen = std::get_if<ClientGenerator>(&config.roster);
    const bool eps_sweep = config.sweep && config.sweep->parameter == SweepParameter::epsilon;
    const bool w_sweep = config.sweep && config.sweep->parameter == SweepParameter::w;

    if (gen != nullptr) {
        if (gen->epsilon.empty() && !eps_sweep) throw ConfigError("generator.epsilon is required unless sweeping epsilon");
        if (!gen->w_dist && !w_sweep) throw ConfigError("generator.w_dist is required unless sweeping w");
    }

    if (config.sweep) {
        for (double v : config.sweep->values) {
            if (eps_sweep) {
                if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("epsilon sweep values must lie in [0, 1]");
                const double g = config.accuracy.value(v);
                if (!(g > 0.0 && g <= 1.0))
                    throw ConfigError("accuracy model leaves (0, 1] at epsilon sweep value " + std::to_string(v));
            } else if (!(std::isfinite(v) && v > 0.0)) {
                throw ConfigError("w sweep values must be positive");
            }
        }
    }

    double max_eps = 0.0;
    if (const auto* clients = std::get_if<std::vector<ClientParams>>(&config.roster)) {
        for (const auto& c : *clients) max_eps = std::max(max_eps, c.epsilon);
    } else {
        for (double e : gen->epsilon) max_eps = std::max(max_eps, e);
    }
    if (!eps_sweep && !(config.accuracy.value(max_eps) > 0.0))
        throw ConfigError("accuracy model is not positive at max epsilon " + std::to_string(max_eps));
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(doc, "config", {"clients", "generator", "accuracy", "cost", "solver", "runs", "seed", "sweep"});

    ExperimentConfig config;
    const bool has_clients = doc.contains("clients");
    const bool has_generator = doc.contains("generator");
    if (has_clients == has_generator) throw ConfigError("config needs exactly one of \"clients\" or \"generator\"");

    if (has_clients) {
        const auto& list = doc.at("clients");
        if (!list.is_array() || list.empty()) throw ConfigError("clients must be a non-empty list");
        std::vector<ClientParams> clients;
        for (std::size_t i = 0; i < list.size(); ++i) clients.push_back(parse_client(list[i], i));
        config.roster = std::move(clients);
    } else {
        config.roster = parse_generator(doc.at("generator"));
    }

    if (doc.contains("accuracy")) config.accuracy = parse_accuracy(doc.at("accuracy"));
    if (doc.contains("cost")) config.cost = parse_cost(doc.at("cost"));
    if (doc.contains("solver")) config.solver = parse_solver(doc.at("solver"));
    if (doc.contains("runs")) {
        config.runs = unsigned_integer(doc.at("runs"), "runs");
        if (config.runs == 0) throw ConfigError("runs must be at least 1");
    }
    if (doc.contains("seed")) config.seed = unsigned_integer(doc.at("seed"), "seed");
    if (doc.contains("sweep")) config.sweep = parse_sweep(doc.at("sweep"));

    check_consistency(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto config = parse_config(buffer.str());

    if (const char* env = std::getenv("DENOISE_GAME_SEED"); env != nullptr && *env != '\0') {
        const std::string text(env);
        std::size_t used = 0;
        try {
            if (text.front() == '-') throw std::invalid_argument("negative");
            config.seed = std::stoull(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size()) throw ConfigError("DENOISE_GAME_SEED must be an unsigned 64-bit integer");
    }
    return config;
}

std::mt19937_64 run_stream(std::uint64_t seed, std::size_t sweep_index, std::size_t run_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sweep_index), static_cast<std::uint32_t>(run_index)};
    return std::mt19937_64(seq);
}

std::vector<double> sample_unit_revenues(std::mt19937_64& rng, const RevenueDistribution& dist, std::size_t n) {
    if (!(dist.lo < dist.hi)) throw ConfigError("truncation range requires lo < hi");
    if (!(dist.std > 0.0)) throw ConfigError("standard deviation must be positive");

    // P(lo <= X <= hi), evaluated on the tail side that avoids cancellation.
    auto upper_tail = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
    const double a = (dist.lo - dist.mean) / dist.std;
    const double b = (dist.hi - dist.mean) / dist.std;
    const double acceptance = a > 0.0 ? upper_tail(a) - upper_tail(b) : upper_tail(-b) - upper_tail(-a);
    if (!(acceptance >= 1e-6))
        throw ConfigError("truncated normal acceptance probability " + std::to_string(acceptance) +
                          " is below 1e-6");

    std::normal_distribution<double> normal(dist.mean, dist.std);
    std::vector<double> draws;
    draws.reserve(n);
    while (draws.size() < n) {
        const double v = normal(rng);
        if (v >= dist.lo && v <= dist.hi) draws.push_back(v);
    }
    return draws;
}

GameInstance materialize(const ExperimentConfig& config, std::optional<double> sweep_value, std::mt19937_64& rng) {
    const bool eps_sweep = sweep_value && config.sweep && config.sweep->parameter == SweepParameter::epsilon;
    const bool w_sweep = sweep_value && config.sweep && config.sweep->parameter == SweepParameter::w;

    std::vector<ClientParams> clients;
    if (const auto* fixed = std::get_if<std::vector<ClientParams>>(&config.roster)) {
        clients = *fixed;
    } else {
        const auto& gen = std::get<ClientGenerator>(config.roster);
        clients.resize(gen.n);
        std::vector<double> revenues;
        if (!w_sweep) {
            if (!gen.w_dist) throw ConfigError("generator.w_dist is required to sample revenues");
            revenues = sample_unit_revenues(rng, *gen.w_dist, gen.n);
        }
        for (std::size_t i = 0; i < gen.n; ++i) {
            clients[i].d = gen.d;
            if (!gen.epsilon.empty()) clients[i].epsilon = gen.epsilon.size() == 1 ? gen.epsilon[0] : gen.epsilon[i];
            if (!revenues.empty()) clients[i].w = revenues[i];
        }
    }

    for (auto& c : clients) {
        if (eps_sweep) c.epsilon = *sweep_value;
        if (w_sweep) c.w = *sweep_value;
    }
    return GameInstance(std::move(clients), config.accuracy, config.cost);
}

GameInstance base_instance(const ExperimentConfig& config) {
    auto rng = run_stream(config.seed, 0, 0);
    return materialize(config, std::nullopt, rng);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const RunObserver& observer) {
    if (!config.sweep) throw ConfigError("config has no sweep section");
    const auto& values = config.sweep->values;

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        SweepRow row;
        row.sweep_value = values[vi];
        for (std::size_t run = 0; run < config.runs; ++run) {
            auto rng = run_stream(config.seed, vi, run);
            try {
                const auto instance = materialize(config, values[vi], rng);
                const auto report = compare(instance, config.solver.mu, config.solver.ne);
                row.acc_swm += report.swm.accuracy;
                row.acc_ne += report.ne.accuracy;
                row.sw_swm += report.swm.welfare;
                row.sw_ne += report.ne.welfare;
                row.pos += report.pos_welfare;
                row.avg_noise_swm += report.swm.avg_noise;
                row.avg_noise_ne += report.ne.avg_noise;
                if (observer) observer(vi, run, instance, report);
            } catch (const Error& e) {
                throw Error("sweep failed at value " + format_decimal(values[vi]) + " (index " + std::to_string(vi) +
                            "), run " + std::to_string(run) + ", seed " + std::to_string(config.seed) + ": " +
                            e.what());
            }
        }
        const auto runs = static_cast<double>(config.runs);
        for (double* field : {&row.acc_swm, &row.acc_ne, &row.sw_swm, &row.sw_ne, &row.pos, &row.avg_noise_swm,
                              &row.avg_noise_ne})
            *field /= runs;
        rows.push_back(row);
    }
    return rows;
}

std::string format_decimal(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";

    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
    int decimals = 9 - exponent;
    if (decimals < 0) {
        const double unit = std::pow(10.0, -decimals);
        value = std::round(value / unit) * unit;
        decimals = 0;
    }
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

void emit_csv(std::span<const SweepRow> rows, std::ostream& out) {
    if (rows.empty()) throw InvalidInput("no rows to write");
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_decimal(r.sweep_value) << ',' << format_decimal(r.acc_swm) << ',' << format_decimal(r.acc_ne)
            << ',' << format_decimal(r.sw_swm) << ',' << format_decimal(r.sw_ne) << ',' << format_decimal(r.pos) << ','
            << format_decimal(r.avg_noise_swm) << ',' << format_decimal(r.avg_noise_ne) << '\n';
    }
}

void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& destination) {
    if (rows.empty()) throw InvalidInput("no rows to write");
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + destination.string() + " for writing");
    emit_csv(rows, static_cast<std::ostream&>(out));
    out.flush();
    if (!out) throw IoError("failed writing " + destination.string());
}

}  // namespace denoise
