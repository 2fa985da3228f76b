#ifndef SHAC_RANDOM_SEARCH_HPP
#define SHAC_RANDOM_SEARCH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "shac/objective.hpp"
#include "shac/optimizer.hpp"
#include "shac/search_space.hpp"

namespace shac {

/// Random search under the same ask/tell protocol and the same prior sampler
/// as the cascade optimizer, so comparisons isolate the cascade's effect.
/// tell() data is validated and then ignored: the trial sequence is a pure
/// function of (seed, space, budget). The 2x variant is just a doubled budget.
class RandomSearchOptimizer {
public:
    RandomSearchOptimizer(SearchSpace space, BudgetConfig budget, std::uint64_t seed);

    bool done() const;
    std::int64_t trials_issued() const { return trials_issued_; }
    std::int64_t batches_completed() const { return batches_completed_; }

    std::vector<Proposal> ask();
    void tell(std::span<const double> values);

private:
    SearchSpace space_;
    BudgetConfig budget_;
    std::uint64_t seed_ = 0;
    std::int64_t trials_issued_ = 0;
    std::int64_t batches_completed_ = 0;
    std::size_t outstanding_ = 0;
};

} // namespace shac

#endif // SHAC_RANDOM_SEARCH_HPP
