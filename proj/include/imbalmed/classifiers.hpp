#pragma once

#include <memory>

#include "imbalmed/classifier.hpp"
#include "imbalmed/models/decision_tree.hpp"
#include "imbalmed/models/gaussian_nb.hpp"
#include "imbalmed/models/knn.hpp"
#include "imbalmed/models/logistic_regression.hpp"
#include "imbalmed/models/nearest_centroid.hpp"
#include "imbalmed/models/random_forest.hpp"

namespace imbalmed {

/// Unfitted model for a spec.
inline std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec) {
  switch (spec.family()) {
    case Family::logistic_regression: return std::make_unique<LogisticRegression>(spec);
    case Family::gaussian_nb: return std::make_unique<GaussianNaiveBayes>(spec);
    case Family::knn: return std::make_unique<KNearestNeighbors>(spec);
    case Family::decision_tree: return std::make_unique<DecisionTree>(spec);
    case Family::nearest_centroid: return std::make_unique<NearestCentroid>(spec);
    case Family::random_forest: return std::make_unique<RandomForest>(spec);
  }
  throw Error(ErrorCode::invalid_argument, "unhandled classifier family");
}

inline std::unique_ptr<Classifier> fit_classifier(const ClassifierSpec& spec, const Matrix& X,
                                                  std::span<const ClassIndex> y, std::size_t classes) {
  auto model = make_classifier(spec);
  model->fit(X, y, classes);
  return model;
}

inline std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
  ClassifierSpec spec(parse_family(j.at("family").get<std::string>()),
                      j.at("hyperparameters").get<std::map<std::string, double>>(), j.at("seed").get<std::uint64_t>());
  auto model = make_classifier(spec);
  model->load_json(j);
  return model;
}

}  // namespace imbalmed
