#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/csv.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/matrix.hpp"

namespace imbalmed {

enum class Family { logistic_regression, gaussian_nb, knn, decision_tree, nearest_centroid, random_forest };

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::logistic_regression: return "logistic_regression";
    case Family::gaussian_nb: return "gaussian_nb";
    case Family::knn: return "knn";
    case Family::decision_tree: return "decision_tree";
    case Family::nearest_centroid: return "nearest_centroid";
    case Family::random_forest: return "random_forest";
  }
  return "unknown";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::logistic_regression, Family::gaussian_nb, Family::knn, Family::decision_tree,
                   Family::nearest_centroid, Family::random_forest}) {
    if (family_name(f) == name) return f;
  }
  throw Error(ErrorCode::invalid_argument, "unknown classifier family '" + std::string(name) + "'");
}

/*
 * Default hyperparameters, one table for every family:
 *
 *   logistic_regression  l2=1e-4  learning_rate=0.1  iterations=500
 *   gaussian_nb          var_floor=1e-9
 *   knn                  k=5
 *   decision_tree        max_depth=8  min_samples_leaf=2
 *   nearest_centroid     (none)
 *   random_forest        n_trees=25  bootstrap=1  max_features=0 (0 = sqrt of width)
 *                        max_depth=8  min_samples_leaf=2
 */
inline std::map<std::string, double> default_hyperparameters(Family f) {
  switch (f) {
    case Family::logistic_regression: return {{"l2", 1e-4}, {"learning_rate", 0.1}, {"iterations", 500}};
    case Family::gaussian_nb: return {{"var_floor", 1e-9}};
    case Family::knn: return {{"k", 5}};
    case Family::decision_tree: return {{"max_depth", 8}, {"min_samples_leaf", 2}};
    case Family::nearest_centroid: return {};
    case Family::random_forest:
      return {{"n_trees", 25}, {"bootstrap", 1}, {"max_features", 0}, {"max_depth", 8}, {"min_samples_leaf", 2}};
  }
  return {};
}

/// Family tag plus frozen hyperparameters and seed.
class ClassifierSpec {
 public:
  explicit ClassifierSpec(Family family, const std::map<std::string, double>& overrides = {}, std::uint64_t seed = 0)
      : family_(family), params_(default_hyperparameters(family)), seed_(seed) {
    for (const auto& [key, value] : overrides) {
      require(params_.contains(key), ErrorCode::invalid_argument,
              "'" + key + "' is not a hyperparameter of " + std::string(family_name(family)));
      params_[key] = value;
    }
  }

  /// Parses "family" or "family:key=value,key=value".
  static ClassifierSpec parse(std::string_view tag) {
    const auto colon = tag.find(':');
    const Family family = parse_family(tag.substr(0, colon));
    std::map<std::string, double> overrides;
    if (colon != std::string_view::npos) {
      std::string_view rest = tag.substr(colon + 1);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const auto eq = item.find('=');
        require(eq != std::string_view::npos, ErrorCode::invalid_argument,
                "malformed hyperparameter '" + std::string(item) + "'");
        const auto value = csv::parse_number(item.substr(eq + 1));
        require(value.has_value(), ErrorCode::invalid_argument,
                "hyperparameter value '" + std::string(item.substr(eq + 1)) + "' is not a number");
        overrides[std::string(item.substr(0, eq))] = *value;
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    }
    return ClassifierSpec(family, overrides);
  }

  Family family() const noexcept { return family_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::map<std::string, double>& hyperparameters() const noexcept { return params_; }
  double param(const std::string& name) const { return params_.at(name); }

  ClassifierSpec with_seed(std::uint64_t seed) const {
    ClassifierSpec copy = *this;
    copy.seed_ = seed;
    return copy;
  }

  /// Canonical tag: family name, then non-default hyperparameters.
  std::string tag() const {
    std::string out(family_name(family_));
    const auto defaults = default_hyperparameters(family_);
    char sep = ':';
    for (const auto& [key, value] : params_) {
      if (defaults.at(key) == value) continue;
      out += sep + key + "=" + csv::format_number(value);
      sep = ',';
    }
    return out;
  }

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;

 private:
  Family family_;
  std::map<std::string, double> params_;
  std::uint64_t seed_;
};

inline constexpr double kProbabilityFloor = 1e-12;

/// Clips to [floor, 1] and renormalizes onto the simplex.
inline void floor_and_normalize(std::span<double> p) {
  double sum = 0.0;
  for (double& v : p) {
    v = std::clamp(std::isfinite(v) ? v : 0.0, kProbabilityFloor, 1.0);
    sum += v;
  }
  for (double& v : p) v /= sum;
}

inline void softmax_inplace(std::span<double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

/**
 * Probabilistic classifier over c classes: maps a feature vector to a point
 * on the probability simplex. Fitted models are immutable and safe for
 * concurrent prediction.
 */
class Classifier {
 public:
  explicit Classifier(ClassifierSpec spec) : spec_(std::move(spec)) {}
  virtual ~Classifier() = default;

  const ClassifierSpec& spec() const noexcept { return spec_; }
  std::size_t classes() const noexcept { return classes_; }
  std::size_t features() const noexcept { return features_; }

  void fit(const Matrix& X, std::span<const ClassIndex> y, std::size_t classes) {
    require(classes >= 2, ErrorCode::invalid_argument, "need at least 2 classes");
    require(X.rows() == y.size(), ErrorCode::dimension_mismatch, "X rows and label count differ");
    require(X.rows() >= classes, ErrorCode::insufficient_rows, "fewer training rows than classes");
    require(X.cols() > 0, ErrorCode::dimension_mismatch, "training matrix has no columns");
    for (double v : X.data()) require(std::isfinite(v), ErrorCode::non_finite_input, "training matrix holds a non-finite value");
    for (ClassIndex k : y) {
      require(k >= 0 && static_cast<std::size_t>(k) < classes, ErrorCode::invalid_argument, "label out of range");
    }
    classes_ = classes;
    features_ = X.cols();
    do_fit(X, y);
  }

  std::vector<double> predict_proba(std::span<const double> x) const {
    require(classes_ > 0, ErrorCode::invalid_argument, "classifier is not fitted");
    require(x.size() == features_, ErrorCode::dimension_mismatch,
            "query has " + std::to_string(x.size()) + " features, model expects " + std::to_string(features_));
    std::vector<double> p(classes_, 0.0);
    raw_proba(x, p);
    floor_and_normalize(p);
    return p;
  }

  Matrix predict_proba_batch(const Matrix& X) const {
    Matrix out(X.rows(), classes_);
    for (std::size_t r = 0; r < X.rows(); ++r) {
      auto p = predict_proba(X.row(r));
      std::copy(p.begin(), p.end(), out.row(r).begin());
    }
    return out;
  }

  nlohmann::json to_json() const {
    return {{"family", family_name(spec_.family())},
            {"hyperparameters", spec_.hyperparameters()},
            {"seed", spec_.seed()},
            {"classes", classes_},
            {"features", features_},
            {"state", state_json()}};
  }

  void load_json(const nlohmann::json& j) {
    classes_ = j.at("classes").get<std::size_t>();
    features_ = j.at("features").get<std::size_t>();
    load_state(j.at("state"));
  }

 protected:
  virtual void do_fit(const Matrix& X, std::span<const ClassIndex> y) = 0;
  /// Writes unnormalized-but-nonnegative class scores into `out`.
  virtual void raw_proba(std::span<const double> x, std::span<double> out) const = 0;
  virtual nlohmann::json state_json() const = 0;
  virtual void load_state(const nlohmann::json& j) = 0;

 private:
  ClassifierSpec spec_;
  std::size_t classes_ = 0;
  std::size_t features_ = 0;
};

}  // namespace imbalmed
