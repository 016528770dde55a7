#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"

namespace imbalmed {

/// c x c counts; rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t classes) : classes_(classes), counts_(classes * classes, 0) {}

  static ConfusionMatrix from_predictions(std::span<const ClassIndex> truth, std::span<const ClassIndex> predicted,
                                          std::size_t classes) {
    require(truth.size() == predicted.size(), ErrorCode::dimension_mismatch, "truth and predictions differ in length");
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      cm.add(static_cast<std::size_t>(truth[i]), static_cast<std::size_t>(predicted[i]));
    }
    return cm;
  }

  static ConfusionMatrix from_counts(const std::vector<std::vector<std::int64_t>>& rows) {
    ConfusionMatrix cm(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      require(rows[t].size() == rows.size(), ErrorCode::dimension_mismatch, "confusion matrix must be square");
      for (std::size_t p = 0; p < rows.size(); ++p) {
        require(rows[t][p] >= 0, ErrorCode::invalid_argument, "confusion counts must be non-negative");
        cm.at(t, p) = rows[t][p];
      }
    }
    return cm;
  }

  void add(std::size_t truth, std::size_t predicted, std::int64_t count = 1) {
    require(truth < classes_ && predicted < classes_, ErrorCode::invalid_argument, "class index out of range");
    at(truth, predicted) += count;
  }

  std::size_t classes() const noexcept { return classes_; }
  std::int64_t operator()(std::size_t truth, std::size_t predicted) const { return counts_[truth * classes_ + predicted]; }

  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto v : counts_) t += v;
    return t;
  }

  /// TP/(TP+FN); 0 when the class never occurs.
  double recall(std::size_t k) const {
    std::int64_t row = 0;
    for (std::size_t p = 0; p < classes_; ++p) row += (*this)(k, p);
    return row ? static_cast<double>((*this)(k, k)) / static_cast<double>(row) : 0.0;
  }

  /// TN/(TN+FP) of the one-vs-rest reduction for class k; 0 when no sample is outside k.
  double specificity(std::size_t k) const {
    std::int64_t negatives = 0;
    std::int64_t false_pos = 0;
    for (std::size_t t = 0; t < classes_; ++t) {
      if (t == k) continue;
      for (std::size_t p = 0; p < classes_; ++p) negatives += (*this)(t, p);
      false_pos += (*this)(t, k);
    }
    return negatives ? static_cast<double>(negatives - false_pos) / static_cast<double>(negatives) : 0.0;
  }

  std::vector<std::vector<std::int64_t>> to_rows() const {
    std::vector<std::vector<std::int64_t>> rows(classes_, std::vector<std::int64_t>(classes_));
    for (std::size_t t = 0; t < classes_; ++t) {
      for (std::size_t p = 0; p < classes_; ++p) rows[t][p] = (*this)(t, p);
    }
    return rows;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::int64_t& at(std::size_t t, std::size_t p) { return counts_[t * classes_ + p]; }

  std::size_t classes_ = 0;
  std::vector<std::int64_t> counts_;
};

enum class GMeanVariant {
  recall_geomean,  // (prod_k recall_k)^(1/c); for c = 2 this is sqrt(recall * specificity)
  paper_literal,   // (prod_k recall_k * specificity_k)^(1/c)
};

inline std::string_view variant_name(GMeanVariant v) {
  return v == GMeanVariant::recall_geomean ? "recall-geomean" : "paper-literal";
}

inline GMeanVariant parse_variant(std::string_view name) {
  if (name == "recall-geomean" || name == "recall_geomean") return GMeanVariant::recall_geomean;
  if (name == "paper-literal" || name == "paper_literal") return GMeanVariant::paper_literal;
  throw Error(ErrorCode::invalid_argument, "unknown metric '" + std::string(name) + "'");
}

/// G-mean as a fraction in [0, 1].
inline double gmean(const ConfusionMatrix& cm, GMeanVariant variant = GMeanVariant::recall_geomean) {
  require(cm.classes() > 0 && cm.total() > 0, ErrorCode::invalid_argument, "G-mean of an empty confusion matrix");
  double product = 1.0;
  for (std::size_t k = 0; k < cm.classes(); ++k) {
    product *= cm.recall(k);
    if (variant == GMeanVariant::paper_literal) product *= cm.specificity(k);
  }
  return std::pow(product, 1.0 / static_cast<double>(cm.classes()));
}

}  // namespace imbalmed
