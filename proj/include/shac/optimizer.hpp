#ifndef SHAC_OPTIMIZER_HPP
#define SHAC_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shac/cascade.hpp"
#include "shac/gbt.hpp"
#include "shac/objective.hpp"
#include "shac/search_space.hpp"

namespace shac {

/// Derived run arithmetic: m batches, at most K classifiers, and the minimum
/// number of evaluated points T_c a classifier is trained on.
struct Schedule {
    std::int64_t batches = 0;          // m = N / W
    int max_classifiers = 0;           // K = min(m - 1, cap)
    std::int64_t classifier_budget = 0; // T_c = W * floor(N / (W * (K + 1)))
};

/// Computes the schedule for a budget and classifier cap.
/// Throws ConfigError when W does not divide N.
Schedule derive_schedule(const BudgetConfig& budget, int max_classifiers_cap);

struct ShacConfig {
    BudgetConfig budget;
    int max_classifiers_cap = 18;
    int cv_folds = 5;
    bool cv_enabled = true;
    double cv_threshold = 0.5;
    GbtConfig gbt;
    std::int64_t max_attempts = 0; // 0 -> 2^(K+4)
    std::uint64_t seed = 0;
};

/// Median-binarize a buffer of evaluated points into a classifier training set.
///
/// Labels are +1 for values >= the sample median (ties land on the accepting
/// side so at least half the buffer stays positive) and -1 below it. Features
/// come from SearchSpace::encode. Throws DatasetError when every row ends up
/// in one class, which the caller treats as "skip this adoption, keep the buffer".
LabeledDataset binarize(const SearchSpace& space,
                        std::span<const std::pair<Point, double>> buffer);

/// One proposed trial: the point, the rejection-sampling cost, and how many
/// classifiers were active when it was drawn.
struct Proposal {
    Point point;
    std::int64_t attempts = 1;
    int cascade_size = 0;
};

/// What a tell() did: whether a classifier was trained, its gate outcome, and
/// the cascade state afterwards.
struct TellReport {
    bool trained = false;
    bool adopted = false;
    std::optional<double> cv_accuracy;
    bool degenerate_buffer = false;
    int cascade_size = 0;
    bool frozen = false;
};

/// Batch-synchronous optimizer that grows a classifier cascade.
///
/// Usage: while (!done()) { batch = ask(); evaluate; tell(values); }.
/// Values passed to tell() must be in maximization orientation and keyed by
/// position in the ask() batch. The optimizer consumes values only through
/// median comparisons, so any strictly increasing transform of the objective
/// leaves the trial sequence unchanged.
///
/// Requires exclusive access during ask/tell; the evaluations in between may
/// run concurrently.
class ShacOptimizer {
public:
    ShacOptimizer(SearchSpace space, ShacConfig config);

    const Schedule& schedule() const { return schedule_; }
    const ShacConfig& config() const { return config_; }
    const Cascade& cascade() const { return cascade_; }

    bool done() const;
    bool frozen() const { return frozen_; }
    std::int64_t trials_issued() const { return trials_issued_; }
    std::int64_t batches_completed() const { return batches_completed_; }
    std::size_t buffer_size() const { return buffer_.size(); }

    /// Propose the next batch of W points, all passing the current cascade.
    /// Throws ProtocolError when the budget is spent or a batch is outstanding;
    /// propagates SamplingExhaustedError if even the one-classifier-dropped
    /// retry cannot find an accepted point.
    std::vector<Proposal> ask();

    /// Report the batch's objective values (maximization orientation, in ask
    /// order). May train and adopt one classifier; returns what happened.
    TellReport tell(std::span<const double> values);

private:
    SampleOutcome sample_with_fallback(Rng& rng) const;
    TellReport maybe_adopt();

    SearchSpace space_;
    ShacConfig config_;
    Schedule schedule_;
    std::int64_t max_attempts_ = 0;
    Cascade cascade_;
    std::vector<std::pair<Point, double>> buffer_;
    std::vector<Point> outstanding_;
    std::int64_t trials_issued_ = 0;
    std::int64_t batches_completed_ = 0;
    std::int64_t train_attempts_ = 0;
    bool frozen_ = false;
};

} // namespace shac

#endif // SHAC_OPTIMIZER_HPP
