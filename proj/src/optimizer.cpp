#include "shac/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shac/errors.hpp"

namespace shac {
namespace {

// child-stream ids under the run's root seed
constexpr std::uint64_t kSamplingStream = 1;
constexpr std::uint64_t kCvStream = 2;

double sample_median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

Schedule derive_schedule(const BudgetConfig& budget, int max_classifiers_cap) {
    budget.validate();
    if (max_classifiers_cap < 0) {
        throw ConfigError("classifier cap must be non-negative");
    }
    Schedule s;
    s.batches = budget.total_budget / budget.workers;
    s.max_classifiers = static_cast<int>(
        std::min<std::int64_t>(s.batches - 1, max_classifiers_cap));
    const std::int64_t w = budget.workers;
    const std::int64_t stages = s.max_classifiers + 1;
    s.classifier_budget = w * (budget.total_budget / (w * stages));
    return s;
}

LabeledDataset binarize(const SearchSpace& space,
                        std::span<const std::pair<Point, double>> buffer) {
    if (buffer.empty()) {
        throw DatasetError("cannot binarize an empty buffer");
    }
    std::vector<double> values;
    values.reserve(buffer.size());
    for (const auto& [point, value] : buffer) {
        values.push_back(value);
    }
    const double median = sample_median(std::move(values));

    LabeledDataset dataset(space.feature_length());
    bool any_pos = false;
    bool any_neg = false;
    for (const auto& [point, value] : buffer) {
        const int label = value >= median ? 1 : -1;
        any_pos |= label > 0;
        any_neg |= label < 0;
        dataset.add(space.encode(point), label);
    }
    if (!any_pos || !any_neg) {
        throw DatasetError("binarized buffer is single-class (all values at the median)");
    }
    return dataset;
}

ShacOptimizer::ShacOptimizer(SearchSpace space, ShacConfig config)
    : space_(std::move(space)),
      config_(std::move(config)),
      schedule_(derive_schedule(config_.budget, config_.max_classifiers_cap)),
      cascade_(space_) {
    config_.gbt.validate();
    if (config_.cv_enabled) {
        if (config_.cv_folds < 2) {
            throw ConfigError("cv_folds must be at least 2");
        }
        if (schedule_.classifier_budget < config_.cv_folds) {
            throw ConfigError("classifier budget is smaller than the number of CV folds");
        }
    }
    max_attempts_ = config_.max_attempts > 0
                        ? config_.max_attempts
                        : std::int64_t{1} << std::min(schedule_.max_classifiers + 4, 62);
    frozen_ = schedule_.max_classifiers == 0;
}

bool ShacOptimizer::done() const {
    return trials_issued_ >= config_.budget.total_budget && outstanding_.empty();
}

SampleOutcome ShacOptimizer::sample_with_fallback(Rng& rng) const {
    try {
        return cascade_.sample_accepted(rng, max_attempts_);
    } catch (const SamplingExhaustedError&) {
        if (cascade_.size() == 0) {
            throw;
        }
        // drop the newest classifier for this draw only, then give up
        return cascade_.prefix(cascade_.size() - 1).sample_accepted(rng, max_attempts_);
    }
}

std::vector<Proposal> ShacOptimizer::ask() {
    if (!outstanding_.empty()) {
        throw ProtocolError("ask called while a batch is outstanding");
    }
    if (trials_issued_ >= config_.budget.total_budget) {
        throw ProtocolError("ask called after the evaluation budget was spent");
    }

    const int w = config_.budget.workers;
    std::vector<Proposal> batch;
    batch.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
        const auto trial = static_cast<std::uint64_t>(trials_issued_ + i);
        Rng rng(derive_seed(config_.seed, kSamplingStream, trial));
        SampleOutcome outcome = sample_with_fallback(rng);
        batch.push_back(Proposal{std::move(outcome.point), outcome.attempts,
                                 static_cast<int>(cascade_.size())});
    }
    trials_issued_ += w;
    outstanding_.clear();
    outstanding_.reserve(batch.size());
    for (const auto& proposal : batch) {
        outstanding_.push_back(proposal.point);
    }
    return batch;
}

TellReport ShacOptimizer::tell(std::span<const double> values) {
    if (outstanding_.empty()) {
        throw ProtocolError("tell called without an outstanding batch");
    }
    if (values.size() != outstanding_.size()) {
        throw ProtocolError("tell received " + std::to_string(values.size()) +
                            " values for a batch of " + std::to_string(outstanding_.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        buffer_.emplace_back(std::move(outstanding_[i]), values[i]);
    }
    outstanding_.clear();
    batches_completed_ += 1;
    return maybe_adopt();
}

TellReport ShacOptimizer::maybe_adopt() {
    TellReport report;
    report.cascade_size = static_cast<int>(cascade_.size());
    report.frozen = frozen_;
    if (frozen_ || buffer_.size() < static_cast<std::size_t>(schedule_.classifier_budget)) {
        return report;
    }

    LabeledDataset dataset;
    try {
        dataset = binarize(space_, buffer_);
    } catch (const DatasetError&) {
        report.degenerate_buffer = true; // keep the buffer, retry after the next batch
        return report;
    }

    const std::int64_t attempt = train_attempts_++;
    GbtModel model = fit(dataset, config_.gbt);
    report.trained = true;

    if (config_.cv_enabled) {
        Rng cv_rng(derive_seed(config_.seed, kCvStream, static_cast<std::uint64_t>(attempt)));
        const double accuracy = cross_val_accuracy(dataset, config_.cv_folds, config_.gbt, cv_rng);
        report.cv_accuracy = accuracy;
        if (accuracy < config_.cv_threshold) {
            return report; // gate failed: discard the model, keep the buffer
        }
    }

    cascade_.append(classifier_from_model(std::move(model)));
    buffer_.clear();
    report.adopted = true;
    report.cascade_size = static_cast<int>(cascade_.size());
    if (report.cascade_size >= schedule_.max_classifiers) {
        frozen_ = true;
    }
    report.frozen = frozen_;
    return report;
}

} // namespace shac
