#ifndef SHAC_GBT_HPP
#define SHAC_GBT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "shac/rng.hpp"
#include "shac/search_space.hpp"

namespace shac {

/// Boosting knobs. The tree count comes from the cascade recipe (200); the
/// rest are the usual defaults of second-order boosting and stay untouched.
struct GbtConfig {
    int n_rounds = 200;
    int max_depth = 6;
    double learning_rate = 0.3;
    double l2_leaf_penalty = 1.0;   // lambda
    double min_child_hessian = 1.0;
    double min_split_gain = 0.0;    // gamma

    void validate() const; // ConfigError on nonsense values
};

/// Binary training set: feature rows with labels in {-1, +1}.
class LabeledDataset {
public:
    LabeledDataset() = default;
    explicit LabeledDataset(std::size_t feature_len) : feature_len_(feature_len) {}

    void add(FeatureVector features, int label);

    std::size_t size() const { return features_.size(); }
    std::size_t feature_len() const { return feature_len_; }
    const FeatureVector& features(std::size_t i) const { return features_[i]; }
    int label(std::size_t i) const { return labels_[i]; }

    bool has_both_classes() const;

private:
    std::vector<FeatureVector> features_;
    std::vector<int> labels_;
    std::size_t feature_len_ = 0;
};

/// One node of a regression tree, stored flat. feature_index < 0 marks a leaf.
struct TreeNode {
    int feature_index = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double weight = 0.0;

    bool is_leaf() const { return feature_index < 0; }
};

/// A regression tree over feature vectors. Navigation sends values <= threshold left.
struct RegressionTree {
    std::vector<TreeNode> nodes;

    double output(std::span<const double> features) const;
    double max_abs_leaf() const;
};

/// A fitted gradient-boosted classifier.
///
/// margin(x) = base_margin + learning_rate * sum of per-tree leaf weights;
/// the predicted label is +1 exactly when margin >= 0, so a model with no
/// trees accepts everything. Models are immutable and safe to share.
class GbtModel {
public:
    GbtModel() { rebuild_bounds(); }
    GbtModel(std::vector<RegressionTree> trees, double learning_rate, double base_margin,
             std::size_t feature_len = 0);

    double margin(std::span<const double> features) const;
    int predict_label(std::span<const double> features) const;

    std::size_t n_trees() const { return trees_.size(); }
    double learning_rate() const { return learning_rate_; }
    double base_margin() const { return base_margin_; }
    /// Expected input length; 0 means unconstrained (tree-free models).
    std::size_t feature_len() const { return feature_len_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }

    /// Debug dump of the tree structure. Not a stability-guaranteed format.
    nlohmann::json to_json() const;

private:
    void rebuild_bounds();
    void require_length(std::size_t got) const;

    std::vector<RegressionTree> trees_;
    double learning_rate_ = 0.3;
    double base_margin_ = 0.0;
    std::size_t feature_len_ = 0;
    // suffix_bound_[t] bounds |contribution of trees t..end|, enabling an
    // exact early exit in predict_label once the sign cannot change.
    std::vector<double> suffix_bound_;
};

/// Newton boosting on logistic loss with exact greedy splits.
///
/// Labels map to {0, 1}; each round fits one regression tree to
/// (g, h) = (p - y, p (1 - p)) and updates margins by learning_rate * output.
/// Split search is deterministic: thresholds at midpoints of consecutive
/// distinct values, ties resolved toward the lowest feature index and then
/// the lowest threshold. Throws DatasetError when the dataset is empty or
/// single-class.
GbtModel fit(const LabeledDataset& dataset, const GbtConfig& config);

/// Mean held-out 0/1 accuracy over k folds. Rows are shuffled once with the
/// given rng, then chunked into folds whose sizes differ by at most one.
/// Throws DatasetError when the dataset has fewer than k rows.
double cross_val_accuracy(const LabeledDataset& dataset, int k, const GbtConfig& config, Rng& rng);

} // namespace shac

#endif // SHAC_GBT_HPP
