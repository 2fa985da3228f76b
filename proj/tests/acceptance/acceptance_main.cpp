// Acceptance suite: reproduces the synthetic-function comparison at fixed
// seeds and checks the mechanism-level properties of the optimizer. Prints
// one PASS/FAIL line per criterion; the exit code is the number of failures.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shac/analysis.hpp"
#include "shac/cascade.hpp"
#include "shac/errors.hpp"
#include "shac/experiment.hpp"
#include "shac/gbt.hpp"
#include "shac/objective.hpp"
#include "shac/optimizer.hpp"
#include "shac/rng.hpp"
#include "shac/search_space.hpp"
#include "shac/trial_log.hpp"

using namespace shac;

namespace {

const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

struct SeriesStats {
    std::vector<double> best_values;
    double mean_best = 0.0;
    std::vector<RunResult> results;
};

// all comparison runs, keyed "algorithm/objective/N/W"
std::map<std::string, SeriesStats> g_runs;

std::string run_key(const std::string& algorithm, const std::string& objective, std::int64_t n,
                    int w) {
    return algorithm + "/" + objective + "/" + std::to_string(n) + "/" + std::to_string(w);
}

RunSpec make_spec(Algorithm algorithm, const std::string& objective, std::int64_t n, int w,
                  std::uint64_t seed) {
    RunSpec spec;
    spec.algorithm = algorithm;
    spec.objective = objective_by_name(objective);
    spec.budget = BudgetConfig{n, w};
    spec.seed = seed;
    spec.shac.cv_enabled = false; // synthetic-function preset
    // every classifier is trained on 20 evaluated points; with 10 workers that
    // means a 9-classifier cap (T_c = 10 * floor(200 / (10 * 10)) = 20)
    if (algorithm == Algorithm::kShac && w == 10) {
        spec.shac.max_classifiers_cap = 9;
    }
    return spec;
}

void execute_comparison_runs() {
    struct Job {
        std::string key;
        RunSpec spec;
    };
    std::vector<Job> jobs;
    auto add_series = [&](Algorithm algorithm, const std::string& objective, std::int64_t n,
                          int w) {
        for (const auto seed : kSeeds) {
            jobs.push_back({run_key(algorithm_name(algorithm), objective, n, w),
                            make_spec(algorithm, objective, n, w, seed)});
        }
    };
    add_series(Algorithm::kShac, "branin", 400, 20);
    add_series(Algorithm::kRandomSearch, "branin", 400, 20);
    add_series(Algorithm::kRandomSearch2x, "branin", 400, 20);
    add_series(Algorithm::kShac, "branin", 200, 10);
    add_series(Algorithm::kRandomSearch, "branin", 200, 10);
    add_series(Algorithm::kShac, "hartmann6", 400, 20);
    add_series(Algorithm::kRandomSearch, "hartmann6", 400, 20);
    add_series(Algorithm::kRandomSearch2x, "hartmann6", 400, 20);
    add_series(Algorithm::kShac, "hartmann6", 200, 10);
    add_series(Algorithm::kRandomSearch, "hartmann6", 200, 10);

    // bounded pool; results land in per-job slots so series keep seed order
    std::vector<RunResult> slots(jobs.size());
    std::atomic<std::size_t> next{0};
    const std::size_t n_workers =
        std::min<std::size_t>(std::max(std::thread::hardware_concurrency(), 1u), jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) {
                    return;
                }
                slots[i] = run_single(jobs[i].spec);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& series = g_runs[jobs[i].key];
        series.best_values.push_back(slots[i].summary.best_value);
        series.results.push_back(std::move(slots[i]));
    }
    for (auto& [key, series] : g_runs) {
        series.mean_best = aggregate_values(series.best_values).mean;
    }
}

const SeriesStats& series(const std::string& algorithm, const std::string& objective,
                          std::int64_t n, int w) {
    return g_runs.at(run_key(algorithm, objective, n, w));
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << v;
    return out.str();
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

using CriterionResult = std::pair<bool, std::string>;

CriterionResult criterion_branin_20x20() {
    const double shac_mean = series("shac", "branin", 400, 20).mean_best;
    const double rs2x_mean = series("rs2x", "branin", 400, 20).mean_best;
    const bool pass = shac_mean >= 0.398 && shac_mean <= 0.50 && shac_mean < rs2x_mean;
    return {pass, "SHAC mean best " + fmt(shac_mean) + " in [0.398, 0.50], RS-2X " +
                      fmt(rs2x_mean)};
}

CriterionResult criterion_branin_20x10() {
    const double shac_mean = series("shac", "branin", 200, 10).mean_best;
    const double rs_mean = series("rs", "branin", 200, 10).mean_best;
    const bool pass = shac_mean <= 0.55 && shac_mean < rs_mean;
    return {pass,
            "SHAC mean best " + fmt(shac_mean) + " <= 0.55 and below RS " + fmt(rs_mean)};
}

CriterionResult criterion_hartmann6() {
    const double shac_2020 = series("shac", "hartmann6", 400, 20).mean_best;
    const double rs2x_2020 = series("rs2x", "hartmann6", 400, 20).mean_best;
    const double shac_2010 = series("shac", "hartmann6", 200, 10).mean_best;
    const bool pass = shac_2020 <= -3.00 && shac_2020 < rs2x_2020 && shac_2010 <= -2.65;
    return {pass, "20x20: SHAC " + fmt(shac_2020) + " <= -3.00 vs RS-2X " + fmt(rs2x_2020) +
                      "; 20x10: SHAC " + fmt(shac_2010) + " <= -2.65"};
}

CriterionResult criterion_rs_sanity() {
    struct Band {
        std::string objective;
        std::int64_t n;
        int w;
        double reported_mean;
        double reported_stderr;
    };
    const std::vector<Band> bands{
        {"branin", 400, 20, 0.543, 0.06},
        {"branin", 200, 10, 0.722, 0.1},
        {"hartmann6", 400, 20, -2.647, 0.13},
        {"hartmann6", 200, 10, -2.231, 0.04},
    };
    bool pass = true;
    std::string detail;
    for (const auto& band : bands) {
        // the best-of-N law has a per-seed sd of ~0.25-0.37 here, so the mean
        // is estimated over 100 seeds to make the band check a test of the
        // sampler rather than of one 5-seed draw
        std::vector<double> bests;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            RunSpec spec = make_spec(Algorithm::kRandomSearch, band.objective, band.n, band.w, seed);
            spec.eval_workers = 1;
            bests.push_back(run_single(spec).summary.best_value);
        }
        const double mean = aggregate_values(bests).mean;
        const double lo = band.reported_mean - 3.0 * band.reported_stderr;
        const double hi = band.reported_mean + 3.0 * band.reported_stderr;
        const bool in_band = mean >= lo && mean <= hi;
        pass = pass && in_band;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += band.objective + " " + std::to_string(band.n / band.w) + "x" +
                  std::to_string(band.w) + ": " + fmt(mean) + (in_band ? " in " : " NOT in ") +
                  "[" + fmt(lo) + ", " + fmt(hi) + "]";
    }
    return {pass, detail};
}

CriterionResult criterion_schedules() {
    const Schedule a = derive_schedule(BudgetConfig{8000, 100}, 18);
    const Schedule b = derive_schedule(BudgetConfig{1600, 100}, 15);
    const Schedule c = derive_schedule(BudgetConfig{200, 20}, 18);
    const bool pass = a.classifier_budget == 400 && a.max_classifiers == 18 && a.batches == 80 &&
                      b.classifier_budget == 100 && b.max_classifiers == 15 &&
                      c.classifier_budget == 20 && c.max_classifiers == 9 && c.batches == 10;
    return {pass, "(8000,100,18) -> T_c " + std::to_string(a.classifier_budget) +
                      "; (1600,100,15) -> T_c " + std::to_string(b.classifier_budget) +
                      "; (200,20,18) -> T_c " + std::to_string(c.classifier_budget) + ", K " +
                      std::to_string(c.max_classifiers)};
}

// trial points and adoption events of a run, serialized for byte comparison
std::string trace_fingerprint(const Objective& maximized, const ShacConfig& config) {
    ShacOptimizer optimizer(maximized.space, config);
    nlohmann::json points = nlohmann::json::array();
    nlohmann::json adoptions = nlohmann::json::array();
    while (!optimizer.done()) {
        const auto batch = optimizer.ask();
        std::vector<double> values;
        for (const auto& proposal : batch) {
            points.push_back(proposal.point.coords);
            values.push_back(maximized.evaluate(proposal.point));
        }
        const TellReport report = optimizer.tell(values);
        if (report.adopted) {
            nlohmann::json event{{"batch", optimizer.batches_completed() - 1},
                                 {"cascade_size", report.cascade_size}};
            event["cv_accuracy"] = report.cv_accuracy ? nlohmann::json(*report.cv_accuracy)
                                                      : nlohmann::json(nullptr);
            adoptions.push_back(std::move(event));
        }
    }
    return points.dump() + "|" + adoptions.dump();
}

CriterionResult criterion_scale_invariance() {
    ShacConfig config;
    config.budget = BudgetConfig{200, 20};
    config.cv_enabled = true; // exercise the gate path too: fold accuracy is rank-only
    config.seed = 7;

    const Objective base = as_maximization(branin_objective());
    Objective affine = base;
    affine.evaluate = [inner = base.evaluate](const Point& p) { return 1000.0 * inner(p) + 7.0; };
    Objective exped = base;
    exped.evaluate = [inner = base.evaluate](const Point& p) {
        return std::exp(std::clamp(inner(p), -500.0, 500.0));
    };

    const std::string trace_base = trace_fingerprint(base, config);
    const std::string trace_affine = trace_fingerprint(affine, config);
    const std::string trace_exp = trace_fingerprint(exped, config);
    const bool pass = trace_base == trace_affine && trace_base == trace_exp;
    return {pass, std::string("traces under 1000y+7 and exp(clamp(y)) ") +
                      (pass ? "are byte-identical" : "DIFFER")};
}

CriterionResult criterion_volume_law() {
    const Objective objective = as_maximization(hartmann6_objective());
    ShacConfig config;
    config.budget = BudgetConfig{200, 20};
    config.cv_enabled = false;
    config.seed = 13;
    ShacOptimizer optimizer(objective.space, config);

    bool pass = true;
    std::string detail;
    while (!optimizer.done()) {
        const auto batch = optimizer.ask();
        std::vector<double> values;
        for (const auto& proposal : batch) {
            values.push_back(objective.evaluate(proposal.point));
        }
        const TellReport report = optimizer.tell(values);
        const int k = report.cascade_size;
        if (report.adopted && k >= 1 && k <= 5) {
            Rng probe_rng(90000 + static_cast<std::uint64_t>(k));
            const int probes = 20000;
            int passed = 0;
            for (int i = 0; i < probes; ++i) {
                passed +=
                    optimizer.cascade().passes(objective.space.sample_prior(probe_rng)) ? 1 : 0;
            }
            const double rate = static_cast<double>(passed) / probes;
            const double nominal = std::pow(0.5, k);
            const bool in_band = rate >= 0.5 * nominal && rate <= 1.5 * nominal;
            pass = pass && in_band;
            if (!detail.empty()) {
                detail += ", ";
            }
            detail += "k=" + std::to_string(k) + ": " + fmt(rate, 4) +
                      (in_band ? "" : " OUTSIDE [" + fmt(0.5 * nominal, 4) + "," +
                                          fmt(1.5 * nominal, 4) + "]");
        }
    }
    return {pass, "fresh-prior pass rates " + detail};
}

CriterionResult criterion_geometric_cost() {
    bool pass = true;
    std::string detail;
    for (int k = 1; k <= 12; ++k) {
        SearchSpace space(
            std::vector<ParamDomain>(static_cast<std::size_t>(k), ContinuousUniform{0.0, 1.0}));
        Cascade cascade(space);
        for (int d = 0; d < k; ++d) {
            cascade.append([d](std::span<const double> f) {
                return f[static_cast<std::size_t>(d)] <= 0.5 ? 1 : -1;
            });
        }
        Rng rng(5000 + static_cast<std::uint64_t>(k));
        const int draws = 10000;
        double total = 0.0;
        for (int i = 0; i < draws; ++i) {
            total += static_cast<double>(cascade.sample_accepted(rng, std::int64_t{1} << 30).attempts);
        }
        const double mean = total / draws;
        const double expected = std::pow(2.0, k);
        const bool within = std::abs(mean - expected) / expected < 0.05;
        pass = pass && within;
        if (!within) {
            detail += " k=" + std::to_string(k) + ": " + fmt(mean, 1) + " vs " + fmt(expected, 1);
        }
    }
    return {pass, pass ? "mean attempts within 5% of 2^k for k = 1..12" : ("off at" + detail)};
}

CriterionResult criterion_gbt_properties() {
    bool pass = true;
    std::string detail;

    // per-round logistic loss is non-increasing on 20 random datasets
    Rng data_rng(41);
    int monotone_violations = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 30 + data_rng.uniform_index(50);
        LabeledDataset data(3);
        bool pos = false;
        bool neg = false;
        for (std::size_t i = 0; i < rows; ++i) {
            FeatureVector x{data_rng.uniform(), data_rng.uniform(), data_rng.uniform()};
            int label;
            if (trial % 2 == 0) {
                label = data_rng.uniform() < 0.5 ? -1 : 1; // pure noise
            } else {
                label = x[0] + x[1] > 1.0 ? 1 : -1; // learnable
            }
            if (i == rows - 2 && !pos) {
                label = 1;
            }
            if (i == rows - 1 && !neg) {
                label = -1;
            }
            pos |= label > 0;
            neg |= label < 0;
            data.add(std::move(x), label);
        }
        const GbtModel model = fit(data, GbtConfig{});
        std::vector<double> margins(data.size(), 0.0);
        auto loss = [&]() {
            double total = 0.0;
            for (std::size_t i = 0; i < data.size(); ++i) {
                const double y = data.label(i) > 0 ? 1.0 : 0.0;
                const double p = 1.0 / (1.0 + std::exp(-margins[i]));
                total -= y * std::log(std::max(p, 1e-12)) +
                         (1.0 - y) * std::log(std::max(1.0 - p, 1e-12));
            }
            return total;
        };
        double previous = loss();
        for (const auto& tree : model.trees()) {
            for (std::size_t i = 0; i < data.size(); ++i) {
                margins[i] += model.learning_rate() * tree.output(data.features(i));
            }
            const double current = loss();
            if (current > previous + 1e-9) {
                ++monotone_violations;
                break;
            }
            previous = current;
        }
    }
    if (monotone_violations > 0) {
        pass = false;
        detail += "loss increased on " + std::to_string(monotone_violations) + " datasets; ";
    }

    // xor trains to accuracy 1.0
    LabeledDataset xor_data(2);
    for (int c = 0; c < 25; ++c) {
        xor_data.add({0.0, 0.0}, -1);
        xor_data.add({1.0, 1.0}, -1);
        xor_data.add({0.0, 1.0}, 1);
        xor_data.add({1.0, 0.0}, 1);
    }
    const GbtModel xor_model = fit(xor_data, GbtConfig{});
    std::size_t correct = 0;
    for (std::size_t i = 0; i < xor_data.size(); ++i) {
        correct += xor_model.predict_label(xor_data.features(i)) == xor_data.label(i) ? 1 : 0;
    }
    if (correct != xor_data.size()) {
        pass = false;
        detail += "xor accuracy " + fmt(static_cast<double>(correct) / xor_data.size(), 3) + "; ";
    }

    // pure-noise cross-validation sits near chance across 20 seeds
    double cv_total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(1000 + seed);
        LabeledDataset noise(3);
        bool pos = false;
        bool neg = false;
        for (int i = 0; i < 100; ++i) {
            FeatureVector x{rng.uniform(), rng.uniform(), rng.uniform()};
            int label = rng.uniform() < 0.5 ? -1 : 1;
            if (i == 98 && !pos) {
                label = 1;
            }
            if (i == 99 && !neg) {
                label = -1;
            }
            pos |= label > 0;
            neg |= label < 0;
            noise.add(std::move(x), label);
        }
        Rng cv_rng(2000 + seed);
        cv_total += cross_val_accuracy(noise, 5, GbtConfig{}, cv_rng);
    }
    const double cv_mean = cv_total / 20.0;
    if (std::abs(cv_mean - 0.5) > 0.15) {
        pass = false;
        detail += "noise cv mean " + fmt(cv_mean, 3) + " outside 0.5 +/- 0.15; ";
    }

    // deterministic refit
    Rng det_rng(77);
    LabeledDataset det_data(2);
    for (int i = 0; i < 40; ++i) {
        const double a = det_rng.uniform();
        const double b = det_rng.uniform();
        det_data.add({a, b}, a > b ? 1 : -1);
    }
    const GbtModel first = fit(det_data, GbtConfig{});
    const GbtModel second = fit(det_data, GbtConfig{});
    if (first.to_json() != second.to_json()) {
        pass = false;
        detail += "refit produced a different model; ";
    }

    return {pass, pass ? "loss monotone, xor exact, noise cv " + fmt(cv_mean, 3) +
                             ", deterministic refits"
                       : detail};
}

CriterionResult criterion_benchmark_oracles() {
    bool pass = true;
    std::string detail;

    const double pi = 3.14159265358979323846;
    const double branin_min = branin(pi, 2.275);
    if (std::abs(branin_min - 0.397887) > 1e-5) {
        pass = false;
        detail += "branin(pi, 2.275) = " + fmt(branin_min, 6) + "; ";
    }
    for (const double dx : {-1e-3, 1e-3}) {
        if (branin(pi + dx, 2.275) <= branin_min || branin(pi, 2.275 + dx) <= branin_min) {
            pass = false;
            detail += "branin perturbation did not increase; ";
        }
    }

    const std::vector<double> x_star{0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573};
    const double h_min = hartmann6(x_star);
    if (std::abs(h_min - (-3.32237)) > 1e-4) {
        pass = false;
        detail += "hartmann6(x*) = " + fmt(h_min, 6) + "; ";
    }
    for (std::size_t d = 0; d < 6 && pass; ++d) {
        for (const double delta : {-1e-3, 1e-3}) {
            auto x = x_star;
            x[d] += delta;
            if (hartmann6(x) <= h_min) {
                pass = false;
                detail += "hartmann6 perturbation did not increase; ";
            }
        }
    }
    return {pass, pass ? "branin " + fmt(branin_min, 6) + ", hartmann6 " + fmt(h_min, 5) +
                             ", both locally minimal"
                       : detail};
}

CriterionResult criterion_median_trend() {
    bool pass = true;
    std::string detail;
    for (const std::string objective : {"branin", "hartmann6"}) {
        int shac_improving = 0;
        int rs_flat = 0;
        for (std::size_t s = 0; s < kSeeds.size(); ++s) {
            const auto& shac_log = series("shac", objective, 400, 20).results[s].log;
            const auto shac_medians = per_batch_median(shac_log);
            const OlsFit shac_fit = ols_fit(shac_medians);
            // raw values are minimized: improving means a negative slope
            shac_improving += shac_fit.slope < 0.0 ? 1 : 0;

            const auto& rs_log = series("rs", objective, 400, 20).results[s].log;
            const OlsFit rs_fit = ols_fit(per_batch_median(rs_log));
            rs_flat += std::abs(rs_fit.slope) <= 2.0 * rs_fit.slope_stderr ? 1 : 0;
        }
        const bool ok = shac_improving >= 4 && rs_flat >= 4;
        pass = pass && ok;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += objective + ": SHAC improving " + std::to_string(shac_improving) +
                  "/5, RS flat " + std::to_string(rs_flat) + "/5";
    }
    return {pass, detail};
}

CriterionResult criterion_diversity() {
    bool pass = true;
    std::string detail;

    SearchSpace pair_space({Categorical{2}, Categorical{2}});
    const std::vector<Point> three{Point{{0.0, 0.0}}, Point{{0.0, 1.0}}, Point{{1.0, 1.0}}};
    const auto h = hamming_histogram(pair_space, three);
    if (!(h.size() == 2 && h.at(1) == 2 && h.at(2) == 1)) {
        pass = false;
        detail += "hand-counted histogram mismatch; ";
    }

    const int d = 12;
    const int v = 5;
    SearchSpace big(std::vector<ParamDomain>(d, Categorical{v}));
    Rng rng(31);
    std::vector<Point> points;
    for (int i = 0; i < 250; ++i) {
        points.push_back(big.sample_prior(rng));
    }
    const auto big_h = hamming_histogram(big, points);
    double total = 0.0;
    std::int64_t mass = 0;
    for (const auto& [distance, count] : big_h) {
        total += static_cast<double>(distance) * static_cast<double>(count);
        mass += count;
    }
    const double mean = total / static_cast<double>(mass);
    const double expected = d * (1.0 - 1.0 / v);
    if (std::abs(mean - expected) / expected > 0.02) {
        pass = false;
        detail += "mean distance " + fmt(mean, 3) + " vs " + fmt(expected, 3) + "; ";
    }
    return {pass, pass ? "{1:2, 2:1} exact; mean distance " + fmt(mean, 3) + " ~ " +
                             fmt(expected, 3)
                       : detail};
}

} // namespace

int main() {
    std::cout << "building comparison runs (5 seeds per series)...\n" << std::flush;
    execute_comparison_runs();

    const std::vector<std::pair<std::string, std::function<CriterionResult()>>> criteria{
        {"Branin 20x20: SHAC in [0.398, 0.50] and below RS-2X", criterion_branin_20x20},
        {"Branin 20x10: SHAC <= 0.55 and below RS", criterion_branin_20x10},
        {"Hartmann6: SHAC <= -3.00 (20x20, below RS-2X) and <= -2.65 (20x10)",
         criterion_hartmann6},
        {"RS within 3 reported standard errors on both functions", criterion_rs_sanity},
        {"Budget arithmetic reproduces the reference schedules", criterion_schedules},
        {"Monotone transforms leave the trial trace byte-identical", criterion_scale_invariance},
        {"Fresh-prior pass rate tracks 1/2^k after k adoptions", criterion_volume_law},
        {"Rejection sampling costs ~2^k draws under k halving stubs", criterion_geometric_cost},
        {"GBT: monotone loss, exact xor, chance-level noise CV, determinism",
         criterion_gbt_properties},
        {"Benchmark oracles at the known minimizers", criterion_benchmark_oracles},
        {"Per-batch median trend: SHAC improves, RS stays flat", criterion_median_trend},
        {"Hamming diversity histogram and mean-distance law", criterion_diversity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        CriterionResult result{false, "exception"};
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        failures += result.first ? 0 : 1;
        std::cout << "[" << std::setw(2) << (i + 1) << "] " << (result.first ? "PASS" : "FAIL")
                  << "  " << criteria[i].first << "\n      " << result.second << "\n";
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
