#include "shac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shac/errors.hpp"

namespace shac {
namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// indices of the k best trials under `direction`, ties toward earlier trials
std::vector<std::size_t> best_indices(const TrialLog& log, std::size_t k, Direction direction) {
    if (k == 0) {
        throw Error("selection size must be positive");
    }
    if (k > log.size()) {
        throw Error("selection size " + std::to_string(k) + " exceeds " +
                    std::to_string(log.size()) + " trials");
    }
    std::vector<std::size_t> idx(log.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto& records = log.records();
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return direction == Direction::kMaximize ? records[a].value > records[b].value
                                                 : records[a].value < records[b].value;
    });
    idx.resize(k);
    return idx;
}

} // namespace

double top_k_mean(const TrialLog& log, std::size_t k, Direction direction) {
    const auto idx = best_indices(log, k, direction);
    double sum = 0.0;
    for (const auto i : idx) {
        sum += log.records()[i].value;
    }
    return sum / static_cast<double>(k);
}

std::vector<double> per_batch_median(const TrialLog& log) {
    if (log.size() == 0) {
        return {};
    }
    std::vector<std::vector<double>> batches;
    for (const auto& r : log.records()) {
        if (r.batch < 0) {
            throw Error("negative batch index in trial log");
        }
        if (static_cast<std::size_t>(r.batch) >= batches.size()) {
            batches.resize(static_cast<std::size_t>(r.batch) + 1);
        }
        batches[static_cast<std::size_t>(r.batch)].push_back(r.value);
    }
    const std::size_t batch_size = batches.front().size();
    for (const auto& b : batches) {
        if (b.size() != batch_size) {
            throw Error("trial log has incomplete or uneven batches");
        }
    }
    std::vector<double> medians;
    medians.reserve(batches.size());
    for (auto& b : batches) {
        medians.push_back(median_of(std::move(b)));
    }
    return medians;
}

std::vector<Point> select_shortlist(const TrialLog& log, std::size_t size, Direction direction) {
    const auto idx = best_indices(log, size, direction);
    std::vector<Point> points;
    points.reserve(size);
    for (const auto i : idx) {
        points.push_back(log.records()[i].point);
    }
    return points;
}

std::map<int, std::int64_t> hamming_histogram(const SearchSpace& space,
                                              std::span<const Point> points) {
    if (!space.is_fully_discrete()) {
        throw UnsupportedSpaceError("hamming distances need a fully discrete space");
    }
    for (const auto& p : points) {
        space.require_valid(p);
    }
    std::map<int, std::int64_t> histogram;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            int distance = 0;
            for (std::size_t d = 0; d < space.n_dims(); ++d) {
                distance += points[i].coords[d] != points[j].coords[d] ? 1 : 0;
            }
            histogram[distance] += 1;
        }
    }
    return histogram;
}

OlsFit ols_fit(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw Error("trend fit needs at least two observations");
    }
    const double x_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (const auto y : series) {
        y_mean += y;
    }
    y_mean /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxx += dx * dx;
        sxy += dx * (series[i] - y_mean);
    }
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    if (n > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = series[i] - (fit.intercept + fit.slope * static_cast<double>(i));
            ssr += e * e;
        }
        fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

RunSummary summarize(const TrialLog& log, Direction direction) {
    RunSummary s;
    s.n_trials = static_cast<std::int64_t>(log.size());
    s.best_value = top_k_mean(log, 1, direction);
    s.top5_mean = top_k_mean(log, std::min<std::size_t>(5, log.size()), direction);
    s.per_batch_median = per_batch_median(log);
    return s;
}

Aggregate aggregate_values(std::span<const double> values) {
    Aggregate a;
    const std::size_t n = values.size();
    if (n == 0) {
        throw Error("cannot aggregate zero values");
    }
    for (const auto v : values) {
        a.mean += v;
    }
    a.mean /= static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (const auto v : values) {
            ss += (v - a.mean) * (v - a.mean);
        }
        a.stderr_ = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return a;
}

} // namespace shac
