#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "imbalmed/classifier.hpp"

namespace imbalmed {

/// k-nearest neighbours (Euclidean). Probabilities are vote fractions among
/// the k closest training rows; distance ties go to the lower row index.
class KNearestNeighbors final : public Classifier {
 public:
  explicit KNearestNeighbors(ClassifierSpec spec) : Classifier(std::move(spec)) {}

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    X_ = X;
    y_.assign(y.begin(), y.end());
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(spec().param("k")), X_.rows());
    std::vector<std::pair<double, std::size_t>> dist(X_.rows());
    for (std::size_t r = 0; r < X_.rows(); ++r) {
      auto row = X_.row(r);
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - row[j]) * (x[j] - row[j]);
      dist[r] = {s, r};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t i = 0; i < k; ++i) out[static_cast<std::size_t>(y_[dist[i].second])] += 1.0 / double(k);
  }

  nlohmann::json state_json() const override {
    return {{"X", std::vector<double>(X_.data().begin(), X_.data().end())}, {"y", y_}};
  }

  void load_state(const nlohmann::json& j) override {
    y_ = j.at("y").get<std::vector<ClassIndex>>();
    const auto flat = j.at("X").get<std::vector<double>>();
    X_ = Matrix(y_.size(), features());
    require(flat.size() == y_.size() * features(), ErrorCode::parse, "knn state truncated");
    for (std::size_t i = 0; i < flat.size(); ++i) X_(i / features(), i % features()) = flat[i];
  }

 private:
  Matrix X_;
  std::vector<ClassIndex> y_;
};

}  // namespace imbalmed
