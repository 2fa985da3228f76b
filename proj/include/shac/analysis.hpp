#ifndef SHAC_ANALYSIS_HPP
#define SHAC_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "shac/objective.hpp"
#include "shac/search_space.hpp"
#include "shac/trial_log.hpp"

namespace shac {

/// Post-run statistics. All functions here are pure in the trial log and safe
/// under any concurrency.

/// Mean of the k best values under the given direction. Throws when k == 0 or
/// k exceeds the number of trials.
double top_k_mean(const TrialLog& log, std::size_t k, Direction direction);

/// One median per complete batch, in batch order. Throws when batches are
/// missing trials or unevenly sized.
std::vector<double> per_batch_median(const TrialLog& log);

/// The `size` best-valued trials' points, ties broken toward earlier trials.
std::vector<Point> select_shortlist(const TrialLog& log, std::size_t size, Direction direction);

/// Histogram of pairwise coordinate-disagreement counts over all unordered
/// pairs. Requires a fully discrete space; throws UnsupportedSpaceError
/// otherwise. Total mass is n*(n-1)/2.
std::map<int, std::int64_t> hamming_histogram(const SearchSpace& space,
                                              std::span<const Point> points);

/// Ordinary least squares y = intercept + slope * index, with the slope's
/// standard error for trend tests.
struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

OlsFit ols_fit(std::span<const double> series);

struct RunSummary {
    double best_value = 0.0;
    double top5_mean = 0.0;
    std::vector<double> per_batch_median;
    std::int64_t n_trials = 0;
};

RunSummary summarize(const TrialLog& log, Direction direction);

/// Sample mean and standard error (sample stddev / sqrt(n)) across seeds.
struct Aggregate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

Aggregate aggregate_values(std::span<const double> values);

} // namespace shac

#endif // SHAC_ANALYSIS_HPP
