#include "shac/search_space.hpp"

#include <cmath>
#include <string>

#include "shac/errors.hpp"

namespace shac {
namespace {

void validate_domain(const ParamDomain& dom, std::size_t dim_index) {
    const std::string where = "dimension " + std::to_string(dim_index) + ": ";
    if (const auto* c = std::get_if<ContinuousUniform>(&dom)) {
        if (!std::isfinite(c->low) || !std::isfinite(c->high)) {
            throw ConfigError(where + "continuous bounds must be finite");
        }
        if (!(c->low < c->high)) {
            throw ConfigError(where + "continuous domain requires low < high");
        }
    } else if (const auto* o = std::get_if<DiscreteOrdinal>(&dom)) {
        if (o->values.empty()) {
            throw ConfigError(where + "ordinal domain requires at least one value");
        }
        for (std::size_t i = 0; i < o->values.size(); ++i) {
            if (!std::isfinite(o->values[i])) {
                throw ConfigError(where + "ordinal values must be finite");
            }
            if (i > 0 && !(o->values[i - 1] < o->values[i])) {
                throw ConfigError(where + "ordinal values must be strictly increasing");
            }
        }
    } else {
        const auto& cat = std::get<Categorical>(dom);
        if (cat.n_choices < 2) {
            throw ConfigError(where + "categorical domain requires at least 2 choices");
        }
    }
}

bool is_index_into(double coord, std::size_t n) {
    if (!(coord >= 0.0) || std::floor(coord) != coord) {
        return false;
    }
    return coord < static_cast<double>(n);
}

} // namespace

SearchSpace::SearchSpace(std::vector<ParamDomain> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw ConfigError("search space requires at least one dimension");
    }
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        validate_domain(dims_[d], d);
        if (const auto* cat = std::get_if<Categorical>(&dims_[d])) {
            feature_length_ += static_cast<std::size_t>(cat->n_choices);
        } else {
            feature_length_ += 1;
        }
        if (std::holds_alternative<ContinuousUniform>(dims_[d])) {
            fully_discrete_ = false;
        }
    }
}

bool SearchSpace::contains(const Point& p) const {
    if (p.coords.size() != dims_.size()) {
        return false;
    }
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        const double coord = p.coords[d];
        if (const auto* c = std::get_if<ContinuousUniform>(&dims_[d])) {
            if (!(coord >= c->low && coord <= c->high)) {
                return false;
            }
        } else if (const auto* o = std::get_if<DiscreteOrdinal>(&dims_[d])) {
            if (!is_index_into(coord, o->values.size())) {
                return false;
            }
        } else {
            const auto& cat = std::get<Categorical>(dims_[d]);
            if (!is_index_into(coord, static_cast<std::size_t>(cat.n_choices))) {
                return false;
            }
        }
    }
    return true;
}

void SearchSpace::require_valid(const Point& p) const {
    if (p.coords.size() != dims_.size()) {
        throw InvalidPointError("point has " + std::to_string(p.coords.size()) +
                                " coordinates, space has " + std::to_string(dims_.size()));
    }
    if (!contains(p)) {
        throw InvalidPointError("point lies outside its search space");
    }
}

Point SearchSpace::sample_prior(Rng& rng) const {
    Point p;
    sample_into(p.coords, rng);
    return p;
}

void SearchSpace::sample_into(std::vector<double>& coords, Rng& rng) const {
    if (dims_.empty()) {
        throw ConfigError("cannot sample from an unset search space");
    }
    coords.resize(dims_.size());
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        if (const auto* c = std::get_if<ContinuousUniform>(&dims_[d])) {
            coords[d] = c->low + rng.uniform() * (c->high - c->low);
        } else if (const auto* o = std::get_if<DiscreteOrdinal>(&dims_[d])) {
            coords[d] = static_cast<double>(rng.uniform_index(o->values.size()));
        } else {
            const auto& cat = std::get<Categorical>(dims_[d]);
            coords[d] = static_cast<double>(rng.uniform_index(static_cast<std::size_t>(cat.n_choices)));
        }
    }
}

FeatureVector SearchSpace::encode(const Point& p) const {
    require_valid(p);
    FeatureVector out;
    encode_into(p.coords, out);
    return out;
}

void SearchSpace::encode_into(std::span<const double> coords, FeatureVector& out) const {
    out.assign(feature_length_, 0.0);
    std::size_t pos = 0;
    for (std::size_t d = 0; d < dims_.size(); ++d) {
        if (std::holds_alternative<ContinuousUniform>(dims_[d])) {
            out[pos++] = coords[d];
        } else if (const auto* o = std::get_if<DiscreteOrdinal>(&dims_[d])) {
            out[pos++] = o->values[static_cast<std::size_t>(coords[d])];
        } else {
            const auto& cat = std::get<Categorical>(dims_[d]);
            out[pos + static_cast<std::size_t>(coords[d])] = 1.0;
            pos += static_cast<std::size_t>(cat.n_choices);
        }
    }
}

} // namespace shac
