#ifndef SHAC_SEARCH_SPACE_HPP
#define SHAC_SEARCH_SPACE_HPP

#include <span>
#include <variant>
#include <vector>

#include "shac/rng.hpp"

namespace shac {

/// Continuous dimension with a uniform prior on [low, high].
struct ContinuousUniform {
    double low = 0.0;
    double high = 1.0;
};

/// Ordered discrete dimension. Points store an index into `values`.
struct DiscreteOrdinal {
    std::vector<double> values;
};

/// Unordered discrete dimension with `n_choices` options. Points store the choice index.
struct Categorical {
    int n_choices = 2;
};

using ParamDomain = std::variant<ContinuousUniform, DiscreteOrdinal, Categorical>;

/// Numeric input row for the classifiers. Length depends only on the space.
using FeatureVector = std::vector<double>;

/// One sampled configuration. Continuous dimensions hold the value itself,
/// ordinal and categorical dimensions hold the (integer-valued) index.
struct Point {
    std::vector<double> coords;

    bool operator==(const Point&) const = default;
};

/// An ordered list of parameter domains, each carrying a uniform prior.
///
/// The space is immutable after construction and safe to share between
/// threads. Sampling mutates only the caller-supplied Rng.
class SearchSpace {
public:
    /// Empty placeholder, not usable for sampling until assigned from a real space.
    SearchSpace() = default;

    explicit SearchSpace(std::vector<ParamDomain> dims);

    std::size_t n_dims() const { return dims_.size(); }
    const std::vector<ParamDomain>& dims() const { return dims_; }

    /// Length of encode() output: 1 per continuous/ordinal dim, n_choices per categorical dim.
    std::size_t feature_length() const { return feature_length_; }

    /// True when no dimension is continuous.
    bool is_fully_discrete() const { return fully_discrete_; }

    bool contains(const Point& p) const;

    /// Throws InvalidPointError if the point does not belong to this space.
    void require_valid(const Point& p) const;

    /// Draw one point from the uniform prior. Consumes exactly n_dims() Rng steps,
    /// one per dimension: continuous dims use low + u * (high - low), discrete dims
    /// map one uniform draw to an index.
    Point sample_prior(Rng& rng) const;

    /// sample_prior into a reusable buffer (hot path of rejection sampling).
    void sample_into(std::vector<double>& coords, Rng& rng) const;

    /// Encode a point for the classifiers: continuous -> value, ordinal -> the
    /// value it indexes, categorical -> one-hot block.
    FeatureVector encode(const Point& p) const;

    /// encode into a reusable buffer, without revalidating the point.
    void encode_into(std::span<const double> coords, FeatureVector& out) const;

private:
    std::vector<ParamDomain> dims_;
    std::size_t feature_length_ = 0;
    bool fully_discrete_ = true;
};

} // namespace shac

#endif // SHAC_SEARCH_SPACE_HPP
