#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "imbalmed/classifier.hpp"

namespace imbalmed {

// Class centroids; probabilities are softmax(-euclidean distance).
class NearestCentroid final : public Classifier {
 public:
  explicit NearestCentroid(ClassifierSpec spec) : Classifier(std::move(spec)) {}

  const Matrix& centroids() const noexcept { return centroids_; }

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    const auto counts = class_counts(y, classes());
    centroids_ = Matrix(classes(), X.cols());
    for (std::size_t i = 0; i < X.rows(); ++i) {
      for (std::size_t j = 0; j < X.cols(); ++j) centroids_(static_cast<std::size_t>(y[i]), j) += X(i, j);
    }
    for (std::size_t k = 0; k < classes(); ++k) {
      require(counts[k] > 0, ErrorCode::empty_class, "nearest_centroid: class " + std::to_string(k) + " has no samples");
      for (std::size_t j = 0; j < X.cols(); ++j) centroids_(k, j) /= static_cast<double>(counts[k]);
    }
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t k = 0; k < out.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - centroids_(k, j)) * (x[j] - centroids_(k, j));
      out[k] = -std::sqrt(s);
    }
    softmax_inplace(out);
  }

  nlohmann::json state_json() const override {
    return {{"centroids", std::vector<double>(centroids_.data().begin(), centroids_.data().end())}};
  }

  void load_state(const nlohmann::json& j) override {
    const auto flat = j.at("centroids").get<std::vector<double>>();
    centroids_ = Matrix(classes(), features());
    require(flat.size() == classes() * features(), ErrorCode::parse, "nearest_centroid state truncated");
    for (std::size_t i = 0; i < flat.size(); ++i) centroids_(i / features(), i % features()) = flat[i];
  }

 private:
  Matrix centroids_;
};

}  // namespace imbalmed
