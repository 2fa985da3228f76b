#include "shac/random_search.hpp"

#include <string>
#include <utility>

#include "shac/errors.hpp"

namespace shac {
namespace {

constexpr std::uint64_t kSamplingStream = 1; // shared with ShacOptimizer

} // namespace

RandomSearchOptimizer::RandomSearchOptimizer(SearchSpace space, BudgetConfig budget,
                                             std::uint64_t seed)
    : space_(std::move(space)), budget_(budget), seed_(seed) {
    budget_.validate();
}

bool RandomSearchOptimizer::done() const {
    return trials_issued_ >= budget_.total_budget && outstanding_ == 0;
}

std::vector<Proposal> RandomSearchOptimizer::ask() {
    if (outstanding_ != 0) {
        throw ProtocolError("ask called while a batch is outstanding");
    }
    if (trials_issued_ >= budget_.total_budget) {
        throw ProtocolError("ask called after the evaluation budget was spent");
    }
    const int w = budget_.workers;
    std::vector<Proposal> batch;
    batch.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
        const auto trial = static_cast<std::uint64_t>(trials_issued_ + i);
        Rng rng(derive_seed(seed_, kSamplingStream, trial));
        batch.push_back(Proposal{space_.sample_prior(rng), 1, 0});
    }
    trials_issued_ += w;
    outstanding_ = batch.size();
    return batch;
}

void RandomSearchOptimizer::tell(std::span<const double> values) {
    if (outstanding_ == 0) {
        throw ProtocolError("tell called without an outstanding batch");
    }
    if (values.size() != outstanding_) {
        throw ProtocolError("tell received " + std::to_string(values.size()) +
                            " values for a batch of " + std::to_string(outstanding_));
    }
    outstanding_ = 0;
    batches_completed_ += 1;
}

} // namespace shac
