#ifndef SHAC_CASCADE_HPP
#define SHAC_CASCADE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shac/gbt.hpp"
#include "shac/search_space.hpp"

namespace shac {

/// Any binary decision over encoded features, returning +1 (accept) or -1 (reject).
using BinaryClassifier = std::function<int(std::span<const double>)>;

/// Wraps a fitted model into a cascade stage.
BinaryClassifier classifier_from_model(GbtModel model);

/// A point accepted by rejection sampling and the number of prior draws it cost.
struct SampleOutcome {
    Point point;
    std::int64_t attempts = 1;
};

/// Ordered conjunction of binary classifiers over one search space.
///
/// A point passes only if every stage accepts it, evaluated in adoption order
/// with a short circuit on the first rejection. A frozen cascade is immutable
/// and safe for concurrent passes()/sample_accepted() calls with per-caller
/// Rngs; growth happens between batches under exclusive access.
class Cascade {
public:
    explicit Cascade(SearchSpace space);

    const SearchSpace& space() const { return space_; }
    std::size_t size() const { return classifiers_.size(); }

    void append(BinaryClassifier classifier);

    /// The first k stages, sharing this cascade's space.
    Cascade prefix(std::size_t k) const;

    bool passes(const Point& point) const;
    bool passes_features(std::span<const double> features) const;

    /// Draw prior samples until one passes every stage. Throws
    /// SamplingExhaustedError (carrying the attempt count) after max_attempts
    /// rejected draws.
    SampleOutcome sample_accepted(Rng& rng, std::int64_t max_attempts) const;

private:
    SearchSpace space_;
    std::vector<BinaryClassifier> classifiers_;
};

} // namespace shac

#endif // SHAC_CASCADE_HPP
