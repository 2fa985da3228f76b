#ifndef SHAC_EXPERIMENT_HPP
#define SHAC_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "shac/analysis.hpp"
#include "shac/gbt.hpp"
#include "shac/objective.hpp"
#include "shac/optimizer.hpp"
#include "shac/trial_log.hpp"

namespace shac {

enum class Algorithm { kShac, kRandomSearch, kRandomSearch2x };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

/// Cascade-optimizer knobs carried by a run configuration.
struct ShacParams {
    int max_classifiers_cap = 18;
    bool cv_enabled = true;
    int cv_folds = 5;
    double cv_threshold = 0.5;
    std::int64_t max_attempts = 0;
    GbtConfig gbt;
};

/// One fully specified single-seed run.
struct RunSpec {
    Algorithm algorithm = Algorithm::kRandomSearch;
    Objective objective;
    BudgetConfig budget; // for rs2x this is the base budget; the run doubles it
    ShacParams shac;
    std::uint64_t seed = 1;
    int eval_workers = 0; // 0 -> budget.workers
};

struct RunResult {
    TrialLog log;
    RunSummary summary;
};

/// Executes one run: ask, evaluate the batch on a worker pool, tell, repeat
/// until the budget is spent. The log stores raw objective values; the
/// optimizer receives them in maximization orientation.
RunResult run_single(const RunSpec& spec);

/// Parsed run-configuration file: flat `key = value` lines, '#' comments.
/// Keys: algorithm, objective, n, w, seeds (comma-separated), output_dir,
/// max_classifiers_cap, cv_enabled, cv_folds, cv_threshold, max_attempts,
/// gbt_n_rounds, gbt_max_depth, gbt_learning_rate, gbt_l2_leaf_penalty,
/// gbt_min_child_hessian, gbt_min_split_gain.
struct RunConfig {
    Algorithm algorithm = Algorithm::kRandomSearch;
    std::string objective;
    std::int64_t n = 0;
    int w = 0;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    ShacParams shac;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Runs every seed of a configuration and writes, under output_dir:
/// trials_<seed>.jsonl, summary_<seed>.json and aggregate.json.
void run_experiment(const RunConfig& config);

/// Side-by-side table of the aggregates found in the given run directories.
/// All runs must share one objective.
std::string compare_table(const std::vector<std::filesystem::path>& run_dirs);

/// Writes medians_<seed>.csv (batch,median) for every trial log in the directory.
void analyze_medians(const std::filesystem::path& run_dir);

/// Writes hamming_<seed>.csv (distance,count) over each seed's shortlist of
/// the given size. Requires the run's space to be fully discrete.
void analyze_hamming(const std::filesystem::path& run_dir, std::size_t shortlist_size = 50);

} // namespace shac

#endif // SHAC_EXPERIMENT_HPP
