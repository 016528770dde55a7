#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "imbalmed/models/decision_tree.hpp"
#include "imbalmed/random.hpp"

namespace imbalmed {

/// Bagged CART trees with per-split feature subsampling; predicts the mean of
/// the trees' leaf distributions.
class RandomForest final : public Classifier {
 public:
  explicit RandomForest(ClassifierSpec spec) : Classifier(std::move(spec)) {}

  const std::vector<CartTree>& trees() const noexcept { return trees_; }

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    const auto n_trees = static_cast<std::size_t>(spec().param("n_trees"));
    require(n_trees >= 1, ErrorCode::invalid_argument, "random_forest needs at least one tree");
    const bool bootstrap = spec().param("bootstrap") != 0.0;
    auto max_features = static_cast<std::size_t>(spec().param("max_features"));
    if (max_features == 0) {
      max_features = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(X.cols()))));
    }
    const TreeGrowth growth{static_cast<std::size_t>(spec().param("max_depth")),
                            static_cast<std::size_t>(spec().param("min_samples_leaf")), max_features};

    constexpr std::uint64_t kTreeStream = 0x74726565ULL;
    trees_.assign(n_trees, CartTree{});
    for (std::size_t t = 0; t < n_trees; ++t) {
      Rng rng = make_rng({spec().seed(), kTreeStream, t});
      std::vector<std::size_t> idx(X.rows());
      if (bootstrap) {
        std::uniform_int_distribution<std::size_t> pick(0, X.rows() - 1);
        for (auto& i : idx) i = pick(rng);
      } else {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
      }
      trees_[t].grow(X, y, classes(), std::move(idx), growth, &rng);
    }
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    for (const auto& tree : trees_) {
      auto d = tree.leaf_distribution(x);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += d[k];
    }
    for (double& v : out) v /= static_cast<double>(trees_.size());
  }

  nlohmann::json state_json() const override {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"trees", std::move(trees)}};
  }

  void load_state(const nlohmann::json& j) override {
    trees_.clear();
    for (const auto& t : j.at("trees")) trees_.push_back(CartTree::from_json(t, classes()));
  }

 private:
  std::vector<CartTree> trees_;
};

}  // namespace imbalmed
