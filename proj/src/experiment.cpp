#include "shac/experiment.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include "shac/errors.hpp"
#include "shac/random_search.hpp"

namespace shac {

using nlohmann::json;
namespace fs = std::filesystem;

std::string algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::kShac:
        return "shac";
    case Algorithm::kRandomSearch:
        return "rs";
    case Algorithm::kRandomSearch2x:
        return "rs2x";
    }
    throw Error("unreachable algorithm value");
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "shac") {
        return Algorithm::kShac;
    }
    if (name == "rs") {
        return Algorithm::kRandomSearch;
    }
    if (name == "rs2x") {
        return Algorithm::kRandomSearch2x;
    }
    throw ConfigError("unknown algorithm: " + name);
}

namespace {

/// Evaluates a batch concurrently, one result slot per point, reassembled in
/// batch order. A throwing evaluation aborts the run with the trial identified.
std::vector<double> evaluate_batch(const Objective& objective, const std::vector<Proposal>& batch,
                                   std::int64_t first_trial, int workers) {
    const std::size_t n = batch.size();
    std::vector<double> values(n, 0.0);
    std::vector<std::string> failures;
    std::mutex failures_mutex;

    const std::size_t n_threads =
        std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(n, 1));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                values[i] = objective.evaluate(batch[i].point);
            } catch (const std::exception& e) {
                throw Error("evaluation failed (trial " +
                            std::to_string(first_trial + static_cast<std::int64_t>(i)) + ": " +
                            e.what() + ")");
            }
        }
        return values;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += n_threads) {
                try {
                    values[i] = objective.evaluate(batch[i].point);
                } catch (const std::exception& e) {
                    const std::lock_guard<std::mutex> lock(failures_mutex);
                    failures.push_back("trial " + std::to_string(first_trial + static_cast<std::int64_t>(i)) +
                                       ": " + e.what());
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end());
        throw Error("evaluation failed (" + failures.front() + ")");
    }
    return values;
}

} // namespace

RunResult run_single(const RunSpec& spec) {
    BudgetConfig budget = spec.budget;
    if (spec.algorithm == Algorithm::kRandomSearch2x) {
        budget.total_budget *= 2;
    }
    budget.validate();
    const int eval_workers = spec.eval_workers > 0 ? spec.eval_workers : budget.workers;

    const Objective maximized = as_maximization(spec.objective);
    const bool negated = spec.objective.direction == Direction::kMinimize;

    RunResult result;
    std::int64_t trial = 0;

    auto record_batch = [&](const std::vector<Proposal>& batch, const std::vector<double>& raw,
                            std::int64_t batch_index) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
            result.log.append_trial(TrialRecord{trial, batch_index, batch[i].point, raw[i],
                                                batch[i].attempts, batch[i].cascade_size});
            ++trial;
        }
    };

    if (spec.algorithm == Algorithm::kShac) {
        ShacConfig config;
        config.budget = budget;
        config.max_classifiers_cap = spec.shac.max_classifiers_cap;
        config.cv_enabled = spec.shac.cv_enabled;
        config.cv_folds = spec.shac.cv_folds;
        config.cv_threshold = spec.shac.cv_threshold;
        config.max_attempts = spec.shac.max_attempts;
        config.gbt = spec.shac.gbt;
        config.seed = spec.seed;

        ShacOptimizer optimizer(spec.objective.space, config);
        std::int64_t batch_index = 0;
        while (!optimizer.done()) {
            const auto batch = optimizer.ask();
            auto raw = evaluate_batch(spec.objective, batch, trial, eval_workers);
            record_batch(batch, raw, batch_index);

            std::vector<double> told = raw;
            if (negated) {
                for (auto& v : told) {
                    v = -v;
                }
            }
            const TellReport report = optimizer.tell(told);
            if (report.adopted) {
                result.log.append_adoption(
                    AdoptionEvent{batch_index, report.cascade_size, report.cv_accuracy});
            }
            ++batch_index;
        }
    } else {
        RandomSearchOptimizer optimizer(spec.objective.space, budget, spec.seed);
        std::int64_t batch_index = 0;
        while (!optimizer.done()) {
            const auto batch = optimizer.ask();
            auto raw = evaluate_batch(spec.objective, batch, trial, eval_workers);
            record_batch(batch, raw, batch_index);
            optimizer.tell(raw); // ignored by random search
            ++batch_index;
        }
    }

    result.summary = summarize(result.log, spec.objective.direction);
    return result;
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError("expected a boolean for '" + key + "', got '" + value + "'");
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig config;
    bool have_algorithm = false;
    bool have_objective = false;
    bool have_n = false;
    bool have_w = false;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }

        try {
            if (key == "algorithm") {
                config.algorithm = algorithm_from_name(value);
                have_algorithm = true;
            } else if (key == "objective") {
                config.objective = value;
                have_objective = true;
            } else if (key == "n") {
                config.n = std::stoll(value);
                have_n = true;
            } else if (key == "w") {
                config.w = std::stoi(value);
                have_w = true;
            } else if (key == "seeds") {
                config.seeds.clear();
                std::istringstream seeds(value);
                std::string token;
                while (std::getline(seeds, token, ',')) {
                    token = trim(token);
                    if (!token.empty()) {
                        config.seeds.push_back(std::stoull(token));
                    }
                }
            } else if (key == "output_dir") {
                config.output_dir = value;
            } else if (key == "max_classifiers_cap") {
                config.shac.max_classifiers_cap = std::stoi(value);
            } else if (key == "cv_enabled") {
                config.shac.cv_enabled = parse_bool(value, key);
            } else if (key == "cv_folds") {
                config.shac.cv_folds = std::stoi(value);
            } else if (key == "cv_threshold") {
                config.shac.cv_threshold = std::stod(value);
            } else if (key == "max_attempts") {
                config.shac.max_attempts = std::stoll(value);
            } else if (key == "gbt_n_rounds") {
                config.shac.gbt.n_rounds = std::stoi(value);
            } else if (key == "gbt_max_depth") {
                config.shac.gbt.max_depth = std::stoi(value);
            } else if (key == "gbt_learning_rate") {
                config.shac.gbt.learning_rate = std::stod(value);
            } else if (key == "gbt_l2_leaf_penalty") {
                config.shac.gbt.l2_leaf_penalty = std::stod(value);
            } else if (key == "gbt_min_child_hessian") {
                config.shac.gbt.min_child_hessian = std::stod(value);
            } else if (key == "gbt_min_split_gain") {
                config.shac.gbt.min_split_gain = std::stod(value);
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": bad value for '" +
                              key + "'");
        } catch (const std::out_of_range&) {
            throw ConfigError("config line " + std::to_string(line_no) + ": value out of range for '" +
                              key + "'");
        }
    }

    if (!have_algorithm || !have_objective || !have_n || !have_w) {
        throw ConfigError("config requires algorithm, objective, n and w");
    }
    if (config.seeds.empty()) {
        config.seeds = {1, 2, 3, 4, 5};
    }
    // validate before any evaluation
    objective_by_name(config.objective);
    BudgetConfig{config.n, config.w}.validate();
    return config;
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str());
}

namespace {

json summary_to_json(const RunConfig& config, std::uint64_t seed, const RunResult& result,
                     Direction direction, std::int64_t actual_n) {
    json adoptions = json::array();
    for (const auto& a : result.log.adoptions()) {
        json e{{"batch", a.batch}, {"cascade_size", a.cascade_size}};
        e["cv_accuracy"] = a.cv_accuracy ? json(*a.cv_accuracy) : json(nullptr);
        adoptions.push_back(std::move(e));
    }
    return json{{"algorithm", algorithm_name(config.algorithm)},
                {"objective", config.objective},
                {"direction", direction_name(direction)},
                {"seed", seed},
                {"n", actual_n},
                {"w", config.w},
                {"batches", actual_n / config.w},
                {"n_trials", result.summary.n_trials},
                {"best_value", result.summary.best_value},
                {"top5_mean", result.summary.top5_mean},
                {"per_batch_median", result.summary.per_batch_median},
                {"adoptions", std::move(adoptions)}};
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error("failed while writing " + path.string());
    }
}

json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return json::parse(in);
}

} // namespace

void run_experiment(const RunConfig& config) {
    if (config.output_dir.empty()) {
        throw ConfigError("config requires output_dir");
    }
    const Objective objective = objective_by_name(config.objective);
    const fs::path out_dir(config.output_dir);
    fs::create_directories(out_dir);

    const std::int64_t actual_n =
        config.algorithm == Algorithm::kRandomSearch2x ? 2 * config.n : config.n;

    std::vector<double> best_values;
    std::vector<double> top5_means;
    for (const auto seed : config.seeds) {
        RunSpec spec;
        spec.algorithm = config.algorithm;
        spec.objective = objective;
        spec.budget = BudgetConfig{config.n, config.w};
        spec.shac = config.shac;
        spec.seed = seed;
        const RunResult result = run_single(spec);

        std::ostringstream log_text;
        write_jsonl(result.log, log_text);
        write_text_file(out_dir / ("trials_" + std::to_string(seed) + ".jsonl"), log_text.str());

        const json summary =
            summary_to_json(config, seed, result, objective.direction, actual_n);
        write_text_file(out_dir / ("summary_" + std::to_string(seed) + ".json"),
                        summary.dump(2) + "\n");

        best_values.push_back(result.summary.best_value);
        top5_means.push_back(result.summary.top5_mean);
    }

    const Aggregate best = aggregate_values(best_values);
    const Aggregate top5 = aggregate_values(top5_means);
    const json aggregate{{"algorithm", algorithm_name(config.algorithm)},
                         {"objective", config.objective},
                         {"direction", direction_name(objective.direction)},
                         {"n", actual_n},
                         {"w", config.w},
                         {"seeds", config.seeds},
                         {"best", {{"values", best_values}, {"mean", best.mean}, {"stderr", best.stderr_}}},
                         {"top5", {{"values", top5_means}, {"mean", top5.mean}, {"stderr", top5.stderr_}}}};
    write_text_file(out_dir / "aggregate.json", aggregate.dump(2) + "\n");
}

std::string compare_table(const std::vector<fs::path>& run_dirs) {
    if (run_dirs.empty()) {
        throw ConfigError("compare needs at least one run directory");
    }
    std::vector<json> aggregates;
    aggregates.reserve(run_dirs.size());
    for (const auto& dir : run_dirs) {
        aggregates.push_back(load_json_file(dir / "aggregate.json"));
    }
    const std::string objective = aggregates.front().at("objective").get<std::string>();
    for (const auto& a : aggregates) {
        if (a.at("objective").get<std::string>() != objective) {
            throw ConfigError("cannot compare runs on different objectives (" + objective +
                              " vs " + a.at("objective").get<std::string>() + ")");
        }
    }

    std::ostringstream out;
    out << "objective: " << objective << "\n";
    out << std::left << std::setw(10) << "algorithm" << std::setw(8) << "n" << std::setw(6) << "w"
        << std::setw(24) << "best (mean +/- se)" << std::setw(24) << "top5 (mean +/- se)" << "\n";
    out << std::string(72, '-') << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& a : aggregates) {
        std::ostringstream best;
        best << std::fixed << std::setprecision(4) << a.at("best").at("mean").get<double>()
             << " +/- " << a.at("best").at("stderr").get<double>();
        std::ostringstream top5;
        top5 << std::fixed << std::setprecision(4) << a.at("top5").at("mean").get<double>()
             << " +/- " << a.at("top5").at("stderr").get<double>();
        out << std::left << std::setw(10) << a.at("algorithm").get<std::string>() << std::setw(8)
            << a.at("n").get<std::int64_t>() << std::setw(6) << a.at("w").get<int>()
            << std::setw(24) << best.str() << std::setw(24) << top5.str() << "\n";
    }
    return out.str();
}

namespace {

std::vector<std::pair<std::string, fs::path>> find_trial_logs(const fs::path& run_dir) {
    std::vector<std::pair<std::string, fs::path>> logs;
    if (!fs::is_directory(run_dir)) {
        throw Error("not a run directory: " + run_dir.string());
    }
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("trials_", 0) == 0 && entry.path().extension() == ".jsonl") {
            const std::string seed = name.substr(7, name.size() - 7 - 6);
            logs.emplace_back(seed, entry.path());
        }
    }
    std::sort(logs.begin(), logs.end());
    if (logs.empty()) {
        throw Error("no trials_<seed>.jsonl files in " + run_dir.string());
    }
    return logs;
}

TrialLog load_trial_log(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return read_jsonl(in);
}

} // namespace

void analyze_medians(const fs::path& run_dir) {
    for (const auto& [seed, path] : find_trial_logs(run_dir)) {
        const TrialLog log = load_trial_log(path);
        const auto medians = per_batch_median(log);
        std::ostringstream csv;
        csv << "batch,median\n";
        csv << std::setprecision(17);
        for (std::size_t b = 0; b < medians.size(); ++b) {
            csv << b << "," << medians[b] << "\n";
        }
        write_text_file(run_dir / ("medians_" + seed + ".csv"), csv.str());
    }
}

void analyze_hamming(const fs::path& run_dir, std::size_t shortlist_size) {
    const json aggregate = load_json_file(run_dir / "aggregate.json");
    const Objective objective = objective_by_name(aggregate.at("objective").get<std::string>());
    for (const auto& [seed, path] : find_trial_logs(run_dir)) {
        const TrialLog log = load_trial_log(path);
        const auto shortlist =
            select_shortlist(log, std::min<std::size_t>(shortlist_size, log.size()),
                             objective.direction);
        const auto histogram = hamming_histogram(objective.space, shortlist);
        std::ostringstream csv;
        csv << "distance,count\n";
        for (const auto& [distance, count] : histogram) {
            csv << distance << "," << count << "\n";
        }
        write_text_file(run_dir / ("hamming_" + seed + ".csv"), csv.str());
    }
}

} // namespace shac
