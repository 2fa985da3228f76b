#include "shac/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "shac/errors.hpp"

namespace shac {
namespace {

double sigmoid(double z) {
    return 1.0 / (1.0 + std::exp(-z));
}

struct SplitCandidate {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;

    bool found() const { return feature >= 0; }
};

struct TreeBuilder {
    const LabeledDataset& data;
    const GbtConfig& cfg;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    RegressionTree tree;
    // scratch, reused across nodes
    std::vector<std::pair<double, std::size_t>> sorted;

    double leaf_weight(double g, double h) const {
        return -g / (h + cfg.l2_leaf_penalty);
    }

    double score(double g, double h) const {
        return g * g / (h + cfg.l2_leaf_penalty);
    }

    SplitCandidate best_split(const std::vector<std::size_t>& rows, double g_total, double h_total) {
        SplitCandidate best;
        const double parent_score = score(g_total, h_total);
        const auto n_features = data.feature_len();
        for (std::size_t f = 0; f < n_features; ++f) {
            sorted.clear();
            for (const auto r : rows) {
                sorted.emplace_back(data.features(r)[f], r);
            }
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            double g_left = 0.0;
            double h_left = 0.0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                g_left += grad[sorted[i].second];
                h_left += hess[sorted[i].second];
                // thresholds only between distinct consecutive values
                if (sorted[i].first == sorted[i + 1].first) {
                    continue;
                }
                const double g_right = g_total - g_left;
                const double h_right = h_total - h_left;
                if (h_left < cfg.min_child_hessian || h_right < cfg.min_child_hessian) {
                    continue;
                }
                const double gain =
                    0.5 * (score(g_left, h_left) + score(g_right, h_right) - parent_score);
                if (gain < cfg.min_split_gain) {
                    continue;
                }
                // strict > keeps the lowest feature index / lowest threshold on ties;
                // a gain of exactly min_split_gain still splits (symmetric data such
                // as balanced xor has a zero-gain root that must be taken)
                if (!best.found() || gain > best.gain) {
                    best.gain = gain;
                    best.feature = static_cast<int>(f);
                    best.threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
                }
            }
        }
        return best;
    }

    int build(std::vector<std::size_t> rows, int depth) {
        double g_total = 0.0;
        double h_total = 0.0;
        for (const auto r : rows) {
            g_total += grad[r];
            h_total += hess[r];
        }

        SplitCandidate split;
        if (depth < cfg.max_depth && rows.size() >= 2) {
            split = best_split(rows, g_total, h_total);
        }
        if (!split.found()) {
            TreeNode leaf;
            leaf.weight = leaf_weight(g_total, h_total);
            tree.nodes.push_back(leaf);
            return static_cast<int>(tree.nodes.size() - 1);
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (const auto r : rows) {
            if (data.features(r)[static_cast<std::size_t>(split.feature)] <= split.threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }
        rows.clear();
        rows.shrink_to_fit();

        TreeNode node;
        node.feature_index = split.feature;
        node.threshold = split.threshold;
        tree.nodes.push_back(node);
        const int index = static_cast<int>(tree.nodes.size() - 1);
        tree.nodes[static_cast<std::size_t>(index)].left = build(std::move(left_rows), depth + 1);
        tree.nodes[static_cast<std::size_t>(index)].right = build(std::move(right_rows), depth + 1);
        return index;
    }
};

RegressionTree grow_tree(const LabeledDataset& data, const GbtConfig& cfg,
                         const std::vector<double>& grad, const std::vector<double>& hess) {
    TreeBuilder builder{data, cfg, grad, hess, {}, {}};
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    builder.build(std::move(all), 0);
    return std::move(builder.tree);
}

} // namespace

void GbtConfig::validate() const {
    if (n_rounds <= 0) {
        throw ConfigError("gbt: n_rounds must be positive");
    }
    if (max_depth <= 0) {
        throw ConfigError("gbt: max_depth must be positive");
    }
    if (!(learning_rate > 0.0)) {
        throw ConfigError("gbt: learning_rate must be positive");
    }
    if (!(l2_leaf_penalty > 0.0)) {
        throw ConfigError("gbt: l2_leaf_penalty must be positive");
    }
    if (!(min_child_hessian > 0.0)) {
        throw ConfigError("gbt: min_child_hessian must be positive");
    }
    if (min_split_gain < 0.0) {
        throw ConfigError("gbt: min_split_gain must be non-negative");
    }
}

void LabeledDataset::add(FeatureVector features, int label) {
    if (label != 1 && label != -1) {
        throw DatasetError("labels must be +1 or -1");
    }
    if (features_.empty() && feature_len_ == 0) {
        feature_len_ = features.size();
    }
    if (features.size() != feature_len_) {
        throw DatasetError("feature vector length " + std::to_string(features.size()) +
                           " does not match dataset feature length " + std::to_string(feature_len_));
    }
    features_.push_back(std::move(features));
    labels_.push_back(label);
}

bool LabeledDataset::has_both_classes() const {
    bool pos = false;
    bool neg = false;
    for (const auto l : labels_) {
        pos |= l > 0;
        neg |= l < 0;
    }
    return pos && neg;
}

double RegressionTree::output(std::span<const double> features) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
        const auto& n = nodes[i];
        i = static_cast<std::size_t>(
            features[static_cast<std::size_t>(n.feature_index)] <= n.threshold ? n.left : n.right);
    }
    return nodes[i].weight;
}

double RegressionTree::max_abs_leaf() const {
    double m = 0.0;
    for (const auto& n : nodes) {
        if (n.is_leaf()) {
            m = std::max(m, std::abs(n.weight));
        }
    }
    return m;
}

GbtModel::GbtModel(std::vector<RegressionTree> trees, double learning_rate, double base_margin,
                   std::size_t feature_len)
    : trees_(std::move(trees)),
      learning_rate_(learning_rate),
      base_margin_(base_margin),
      feature_len_(feature_len) {
    rebuild_bounds();
}

void GbtModel::require_length(std::size_t got) const {
    if (feature_len_ != 0 && got != feature_len_) {
        throw InvalidPointError("feature vector length " + std::to_string(got) +
                                " does not match the model's " + std::to_string(feature_len_));
    }
}

void GbtModel::rebuild_bounds() {
    suffix_bound_.assign(trees_.size() + 1, 0.0);
    for (std::size_t t = trees_.size(); t-- > 0;) {
        suffix_bound_[t] = suffix_bound_[t + 1] + learning_rate_ * trees_[t].max_abs_leaf();
    }
}

double GbtModel::margin(std::span<const double> features) const {
    require_length(features.size());
    double m = base_margin_;
    for (const auto& tree : trees_) {
        m += learning_rate_ * tree.output(features);
    }
    return m;
}

int GbtModel::predict_label(std::span<const double> features) const {
    require_length(features.size());
    double m = base_margin_;
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        m += learning_rate_ * trees_[t].output(features);
        // the remaining trees cannot flip the sign once |m| exceeds their reach
        if (std::abs(m) > suffix_bound_[t + 1]) {
            break;
        }
    }
    return m >= 0.0 ? 1 : -1;
}

nlohmann::json GbtModel::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : trees_) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : tree.nodes) {
            if (n.is_leaf()) {
                nodes.push_back({{"weight", n.weight}});
            } else {
                nodes.push_back({{"feature_index", n.feature_index},
                                 {"threshold", n.threshold},
                                 {"left", n.left},
                                 {"right", n.right}});
            }
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    return {{"learning_rate", learning_rate_},
            {"base_margin", base_margin_},
            {"trees", std::move(trees)}};
}

GbtModel fit(const LabeledDataset& dataset, const GbtConfig& config) {
    config.validate();
    if (dataset.size() == 0) {
        throw DatasetError("cannot fit on an empty dataset");
    }
    if (!dataset.has_both_classes()) {
        throw DatasetError("cannot fit on a single-class dataset");
    }

    const std::size_t n = dataset.size();
    std::vector<double> margins(n, 0.0);
    std::vector<double> grad(n);
    std::vector<double> hess(n);
    std::vector<RegressionTree> trees;
    trees.reserve(static_cast<std::size_t>(config.n_rounds));

    for (int round = 0; round < config.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(margins[i]);
            const double y = dataset.label(i) > 0 ? 1.0 : 0.0;
            grad[i] = p - y;
            hess[i] = p * (1.0 - p);
        }
        RegressionTree tree = grow_tree(dataset, config, grad, hess);
        for (std::size_t i = 0; i < n; ++i) {
            margins[i] += config.learning_rate * tree.output(dataset.features(i));
        }
        trees.push_back(std::move(tree));
    }
    return GbtModel(std::move(trees), config.learning_rate, 0.0, dataset.feature_len());
}

double cross_val_accuracy(const LabeledDataset& dataset, int k, const GbtConfig& config, Rng& rng) {
    if (k < 2) {
        throw ConfigError("cross-validation requires at least 2 folds");
    }
    const std::size_t n = dataset.size();
    if (n < static_cast<std::size_t>(k)) {
        throw DatasetError("dataset of " + std::to_string(n) + " rows cannot be split into " +
                           std::to_string(k) + " folds");
    }
    if (!dataset.has_both_classes()) {
        throw DatasetError("cross-validation requires both classes");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);

    const std::size_t base = n / static_cast<std::size_t>(k);
    const std::size_t extra = n % static_cast<std::size_t>(k);

    double accuracy_sum = 0.0;
    std::size_t start = 0;
    for (int fold = 0; fold < k; ++fold) {
        const std::size_t fold_size = base + (static_cast<std::size_t>(fold) < extra ? 1 : 0);
        const std::size_t stop = start + fold_size;

        LabeledDataset train(dataset.feature_len());
        int pos = 0;
        int neg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= start && i < stop) {
                continue;
            }
            const auto r = order[i];
            train.add(dataset.features(r), dataset.label(r));
            (dataset.label(r) > 0 ? pos : neg)++;
        }

        std::size_t correct = 0;
        if (train.has_both_classes()) {
            const GbtModel model = fit(train, config);
            for (std::size_t i = start; i < stop; ++i) {
                const auto r = order[i];
                correct += model.predict_label(dataset.features(r)) == dataset.label(r) ? 1 : 0;
            }
        } else {
            // single-class training fold: score the constant majority prediction
            const int constant = pos > 0 ? 1 : -1;
            for (std::size_t i = start; i < stop; ++i) {
                correct += constant == dataset.label(order[i]) ? 1 : 0;
            }
        }
        accuracy_sum += static_cast<double>(correct) / static_cast<double>(fold_size);
        start = stop;
    }
    return accuracy_sum / static_cast<double>(k);
}

} // namespace shac
