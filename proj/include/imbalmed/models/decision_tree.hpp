#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "imbalmed/classifier.hpp"
#include "imbalmed/random.hpp"

namespace imbalmed {

struct TreeGrowth {
  std::size_t max_depth = 8;
  std::size_t min_samples_leaf = 2;
  std::size_t max_features = 0;  // features examined per split; 0 or >= width means all
};

/**
 * CART tree with Gini impurity. Rows with x[feature] <= threshold go left.
 * Leaves store class frequencies of the training rows that reached them.
 *
 * A node splits only when the best split strictly lowers impurity, both
 * children keep min_samples_leaf rows, and max_depth is not reached. Among
 * equally good splits the lowest feature index, then lowest threshold wins,
 * which makes the tree independent of training row order.
 */
class CartTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<double> distribution;

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// Grows on the (possibly repeated) rows `idx` of X. `rng` is only drawn
  /// from when max_features restricts the candidate features.
  void grow(const Matrix& X, std::span<const ClassIndex> y, std::size_t classes, std::vector<std::size_t> idx,
            const TreeGrowth& growth, Rng* rng) {
    nodes_.clear();
    classes_ = classes;
    X_ = &X;
    y_ = y;
    growth_ = growth;
    rng_ = rng;
    build(std::move(idx), 0);
    X_ = nullptr;
    y_ = {};
    rng_ = nullptr;
  }

  std::span<const double> leaf_distribution(std::span<const double> x) const {
    std::size_t at = 0;
    while (nodes_[at].feature >= 0) {
      const Node& n = nodes_[at];
      at = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[at].distribution;
  }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t depth() const { return nodes_.empty() ? 0 : depth_of(0); }

  nlohmann::json to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& n : nodes_) {
      out.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right},
                     {"distribution", n.distribution}});
    }
    return out;
  }

  static CartTree from_json(const nlohmann::json& j, std::size_t classes) {
    CartTree t;
    t.classes_ = classes;
    for (const auto& n : j) {
      t.nodes_.push_back({n.at("feature").get<int>(), n.at("threshold").get<double>(), n.at("left").get<std::size_t>(),
                          n.at("right").get<std::size_t>(), n.at("distribution").get<std::vector<double>>()});
    }
    require(!t.nodes_.empty(), ErrorCode::parse, "tree has no nodes");
    return t;
  }

  friend bool operator==(const CartTree& a, const CartTree& b) { return a.nodes_ == b.nodes_; }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;  // size-weighted child impurity times n
  };

  static double weighted_gini(std::span<const std::int64_t> counts, std::int64_t n) {
    // n * gini = n - sum(c_k^2) / n; the integer sum keeps this exact under class relabeling.
    std::int64_t sq = 0;
    for (auto c : counts) sq += c * c;
    return static_cast<double>(n) - static_cast<double>(sq) / static_cast<double>(n);
  }

  std::size_t build(std::vector<std::size_t> idx, std::size_t depth) {
    const std::size_t at = nodes_.size();
    nodes_.emplace_back();

    std::vector<std::int64_t> counts(classes_, 0);
    for (std::size_t i : idx) ++counts[static_cast<std::size_t>(y_[i])];
    auto& dist = nodes_[at].distribution;
    dist.resize(classes_);
    for (std::size_t k = 0; k < classes_; ++k) dist[k] = static_cast<double>(counts[k]) / static_cast<double>(idx.size());

    const auto n = static_cast<std::int64_t>(idx.size());
    const double parent = weighted_gini(counts, n);
    const bool pure = std::count(counts.begin(), counts.end(), 0) == static_cast<std::ptrdiff_t>(classes_ - 1);
    if (pure || depth >= growth_.max_depth || idx.size() < 2 * growth_.min_samples_leaf) return at;

    const Split best = find_split(idx, parent);
    if (best.feature < 0) return at;

    std::vector<std::size_t> left, right;
    for (std::size_t i : idx) {
      ((*X_)(i, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    const std::size_t l = build(std::move(left), depth + 1);
    const std::size_t r = build(std::move(right), depth + 1);
    nodes_[at].feature = best.feature;
    nodes_[at].threshold = best.threshold;
    nodes_[at].left = l;
    nodes_[at].right = r;
    return at;
  }

  std::vector<std::size_t> candidate_features() {
    const std::size_t width = X_->cols();
    std::vector<std::size_t> all(width);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (growth_.max_features == 0 || growth_.max_features >= width || rng_ == nullptr) return all;
    auto chosen = sample_without_replacement<std::size_t>(all, growth_.max_features, *rng_);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  Split find_split(const std::vector<std::size_t>& idx, double parent) {
    Split best;
    best.impurity = parent - 1e-12;
    const std::size_t n = idx.size();
    const std::size_t min_leaf = std::max<std::size_t>(1, growth_.min_samples_leaf);
    std::vector<std::pair<double, ClassIndex>> column(n);
    std::vector<std::int64_t> left(classes_), right(classes_);

    for (std::size_t f : candidate_features()) {
      for (std::size_t i = 0; i < n; ++i) column[i] = {(*X_)(idx[i], f), y_[idx[i]]};
      std::sort(column.begin(), column.end());
      std::fill(left.begin(), left.end(), 0);
      std::fill(right.begin(), right.end(), 0);
      for (const auto& [v, label] : column) ++right[static_cast<std::size_t>(label)];

      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto k = static_cast<std::size_t>(column[i].second);
        ++left[k];
        --right[k];
        const std::size_t n_left = i + 1;
        if (n_left < min_leaf) continue;
        if (n - n_left < min_leaf) break;
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (!(lo < hi)) continue;
        const double impurity = weighted_gini(left, static_cast<std::int64_t>(n_left)) +
                                weighted_gini(right, static_cast<std::int64_t>(n - n_left));
        if (impurity < best.impurity) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;
          best = {static_cast<int>(f), mid, impurity};
        }
      }
    }
    return best;
  }

  std::size_t depth_of(std::size_t at) const {
    const Node& n = nodes_[at];
    if (n.feature < 0) return 0;
    return 1 + std::max(depth_of(n.left), depth_of(n.right));
  }

  std::vector<Node> nodes_;
  std::size_t classes_ = 0;
  const Matrix* X_ = nullptr;
  std::span<const ClassIndex> y_;
  TreeGrowth growth_;
  Rng* rng_ = nullptr;
};

class DecisionTree final : public Classifier {
 public:
  explicit DecisionTree(ClassifierSpec spec) : Classifier(std::move(spec)) {}

  const CartTree& tree() const noexcept { return tree_; }

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    std::vector<std::size_t> idx(X.rows());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const TreeGrowth growth{static_cast<std::size_t>(spec().param("max_depth")),
                            static_cast<std::size_t>(spec().param("min_samples_leaf")), 0};
    tree_.grow(X, y, classes(), std::move(idx), growth, nullptr);
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    auto d = tree_.leaf_distribution(x);
    std::copy(d.begin(), d.end(), out.begin());
  }

  nlohmann::json state_json() const override { return {{"nodes", tree_.to_json()}}; }
  void load_state(const nlohmann::json& j) override { tree_ = CartTree::from_json(j.at("nodes"), classes()); }

 private:
  CartTree tree_;
};

}  // namespace imbalmed
