// Experiment harness: JSON configuration, seeded instance generation,
// parameter sweeps averaged over repeated runs, and CSV output.
//
// Config schema (unknown keys are rejected at every level):
//
//   {
//     "clients":   [{"w": 2000, "d": 100, "epsilon": 0.2}, ...],      // either this
//     "generator": {"n": 5, "d": 12000,                                // or this
//                   "epsilon": 0.1 | [0.1, 0.05, ...],
//                   "w_dist": {"mean": 1e6, "std": 1e4, "lo": 5e5, "hi": 1.5e6}},
//     "accuracy":  {"type": "linear", "kappa": -0.5, "g0": 0.95}
//                | {"type": "quadratic", "g2": -2.0, "g1": -0.1, "g0": 0.95},
//     "cost":      {"type": "log", "c": -1},
//     "solver":    {"mu": 1e-9, "convg_thresh": 1e-8, "max_sweeps": 100000},
//     "runs":      100,
//     "seed":      42,
//     "sweep":     {"parameter": "epsilon" | "w", "values": [0, 0.02, ...]}
//   }
//
// Everything except the roster is optional. The generator's epsilon may be
// omitted for an epsilon sweep and its w_dist for a w sweep. The environment
// variable DENOISE_GAME_SEED overrides "seed" when loading from a file.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "denoise/models.hpp"
#include "denoise/ne.hpp"
#include "denoise/pos.hpp"

namespace denoise {

/// Normal(mean, std) conditioned on [lo, hi].
struct RevenueDistribution {
    double mean = 1e6;
    double std = 1e4;
    double lo = 5e5;
    double hi = 1.5e6;
};

struct ClientGenerator {
    std::size_t n = 0;
    double d = 0.0;
    std::vector<double> epsilon;  ///< one value (broadcast) or n values; empty if unset
    std::optional<RevenueDistribution> w_dist;
};

struct SolverParams {
    double mu = kDefaultMu;
    NeOptions ne;
};

enum class SweepParameter { epsilon, w };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::epsilon;
    std::vector<double> values;
};

struct ExperimentConfig {
    std::variant<std::vector<ClientParams>, ClientGenerator> roster;
    AccuracyModel accuracy;
    CostModel cost;
    SolverParams solver;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    std::optional<SweepSpec> sweep;
};

/// Averages across runs of one sweep point. pos is the mean of per-run ratios.
struct SweepRow {
    double sweep_value = 0.0;
    double acc_swm = 0.0;
    double acc_ne = 0.0;
    double sw_swm = 0.0;
    double sw_ne = 0.0;
    double pos = 0.0;
    double avg_noise_swm = 0.0;
    double avg_noise_ne = 0.0;
};

/// Throws ConfigError on malformed documents or values outside their domains.
ExperimentConfig parse_config(std::string_view json_text);

/// Reads and parses a config file, then applies the DENOISE_GAME_SEED override.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Independent stream per (master seed, sweep index, run index), so any
/// scheduling of runs yields the same draws.
std::mt19937_64 run_stream(std::uint64_t seed, std::size_t sweep_index, std::size_t run_index);

/// n rejection-sampled draws from the truncated normal. Throws ConfigError
/// when lo >= hi, std <= 0, or the acceptance probability is below 1e-6.
std::vector<double> sample_unit_revenues(std::mt19937_64& rng, const RevenueDistribution& dist, std::size_t n);

/// Builds one game for a sweep point (or the base instance when value is empty).
GameInstance materialize(const ExperimentConfig& config, std::optional<double> sweep_value, std::mt19937_64& rng);

/// The config's instance outside any sweep, drawing from stream (seed, 0, 0).
GameInstance base_instance(const ExperimentConfig& config);

/// Called once per run with the sweep point index, run index, and comparison.
using RunObserver = std::function<void(std::size_t value_index, std::size_t run_index, const GameInstance& instance,
                                       const PosReport& report)>;

/// Runs pos::compare for every sweep value and run, averaging per value.
/// A failing run aborts with an Error naming the seed, value and run.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const RunObserver& observer = {});

inline constexpr std::string_view kCsvHeader =
    "sweep_value,acc_swm,acc_ne,sw_swm,sw_ne,pos,avg_noise_swm,avg_noise_ne";

/// Decimal notation with 10 significant digits.
std::string format_decimal(double value);

void emit_csv(std::span<const SweepRow> rows, std::ostream& out);
/// Throws IoError if the file cannot be written.
void emit_csv(std::span<const SweepRow> rows, const std::filesystem::path& destination);

}  // namespace denoise
