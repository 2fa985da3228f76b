#include "shac/cascade.hpp"

#include <memory>
#include <string>
#include <utility>

#include "shac/errors.hpp"

namespace shac {

BinaryClassifier classifier_from_model(GbtModel model) {
    auto shared = std::make_shared<const GbtModel>(std::move(model));
    return [shared](std::span<const double> features) { return shared->predict_label(features); };
}

Cascade::Cascade(SearchSpace space) : space_(std::move(space)) {}

void Cascade::append(BinaryClassifier classifier) {
    classifiers_.push_back(std::move(classifier));
}

Cascade Cascade::prefix(std::size_t k) const {
    Cascade out(space_);
    for (std::size_t i = 0; i < k && i < classifiers_.size(); ++i) {
        out.classifiers_.push_back(classifiers_[i]);
    }
    return out;
}

bool Cascade::passes(const Point& point) const {
    space_.require_valid(point);
    FeatureVector features;
    space_.encode_into(point.coords, features);
    return passes_features(features);
}

bool Cascade::passes_features(std::span<const double> features) const {
    for (const auto& c : classifiers_) {
        if (c(features) < 0) {
            return false;
        }
    }
    return true;
}

SampleOutcome Cascade::sample_accepted(Rng& rng, std::int64_t max_attempts) const {
    if (max_attempts < 1) {
        throw ConfigError("sample_accepted requires max_attempts >= 1");
    }
    std::vector<double> coords;
    FeatureVector features;
    for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
        space_.sample_into(coords, rng);
        space_.encode_into(coords, features);
        if (passes_features(features)) {
            return SampleOutcome{Point{coords}, attempt};
        }
    }
    throw SamplingExhaustedError("rejection sampling exhausted after " +
                                     std::to_string(max_attempts) + " attempts",
                                 max_attempts);
}

} // namespace shac
