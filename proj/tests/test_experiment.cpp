#include <catch_amalgamated.hpp>

#include "imbalmed/experiment.hpp"
#include "imbalmed/synth.hpp"

using namespace imbalmed;

namespace {

MultimodalDataset small_binary(std::uint64_t seed) {
  auto cfg = synth::preset("binary", seed);
  cfg.n_samples = 300;
  return synth::generate(cfg);
}

}  // namespace

TEST_CASE("ten folds give ten ordered results", "[experiment]") {
  const auto ds = small_binary(1);
  ExperimentOptions opts;
  opts.seed = 4;
  const auto results = run_cv_experiment(ds, {ClassifierSpec(Family::gaussian_nb)}, EnsembleMode::imbalmed, opts);
  REQUIRE(results.size() == 10);
  for (std::size_t f = 0; f < results.size(); ++f) {
    CHECK(results[f].fold_index == f);
    CHECK(results[f].selected_index == 0);
    CHECK(results[f].selected == "gaussian_nb");
    CHECK(results[f].candidates.size() == 1);
    CHECK(results[f].test_gmean >= 0.0);
    CHECK(results[f].test_gmean <= 100.0);
    CHECK(results[f].test_gmean == results[f].test_gmean_recall_geomean);
    CHECK(results[f].test_confusion.total() == 30);
  }
  const auto s = summarize(results);
  CHECK(s.per_fold.size() == 10);
  CHECK(s.mean > 50.0);
}

TEST_CASE("selection keeps the candidate that wins on validation", "[experiment]") {
  const auto ds = small_binary(2);
  ExperimentOptions opts;
  opts.seed = 9;
  // A depth-0 tree predicts the training prior, so its G-mean is 0.
  const std::vector<ClassifierSpec> specs{ClassifierSpec::parse("decision_tree:max_depth=0"),
                                          ClassifierSpec(Family::logistic_regression)};
  const auto results = run_cv_experiment(ds, specs, EnsembleMode::unbalanced_baseline, opts);
  std::size_t picked = 0;
  for (const auto& r : results) {
    picked += r.selected_index == 1;
    REQUIRE(r.candidates.size() == 2);
    CHECK(r.candidates[0].val_gmean == 0.0);
  }
  CHECK(picked >= 9);
}

TEST_CASE("a failing candidate is skipped and recorded", "[experiment]") {
  const auto ds = small_binary(3);
  ExperimentOptions opts;
  opts.folds = 3;
  opts.r = 0.7;  // admits no vector, so every imbalmed candidate fails
  CHECK_THROWS_AS(run_cv_experiment(ds, {ClassifierSpec(Family::knn)}, EnsembleMode::imbalmed, opts), Error);
  const auto base = run_cv_experiment(ds, {ClassifierSpec(Family::knn)}, EnsembleMode::unbalanced_baseline, opts);
  CHECK(base.size() == 3);
}

TEST_CASE("comparing a method with itself is a full tie", "[experiment]") {
  const auto ds = small_binary(4);
  ExperimentOptions opts;
  opts.folds = 5;
  const auto run = run_cv_experiment(ds, {ClassifierSpec(Family::nearest_centroid)}, EnsembleMode::imbalmed, opts);
  const auto report = compare_results(run, run);
  CHECK(report.wtl.tie == 100.0);
  CHECK(report.ttest.p == 1.0);
  CHECK(report.ttest.t == 0.0);
  CHECK(report.annotation == "T");
}

TEST_CASE("experiments are reproducible across thread counts", "[experiment][property]") {
  const auto ds = small_binary(5);
  ExperimentOptions opts;
  opts.folds = 4;
  opts.seed = 21;
  const std::vector<ClassifierSpec> specs{ClassifierSpec(Family::decision_tree), ClassifierSpec(Family::knn)};
  opts.threads = 1;
  const auto a = compare_methods(ds, specs, opts);
  opts.threads = 4;
  const auto b = compare_methods(ds, specs, opts);
  CHECK(a.imbalmed_summary.per_fold == b.imbalmed_summary.per_fold);
  CHECK(a.baseline_summary.per_fold == b.baseline_summary.per_fold);
  for (std::size_t f = 0; f < a.imbalmed.size(); ++f) {
    CHECK(a.imbalmed[f].selected == b.imbalmed[f].selected);
    CHECK(a.imbalmed[f].test_confusion == b.imbalmed[f].test_confusion);
  }
  opts.seed = 22;
  const auto c = compare_methods(ds, specs, opts);
  CHECK(c.imbalmed_summary.per_fold != a.imbalmed_summary.per_fold);
}

TEST_CASE("paper-literal metric drives selection when requested", "[experiment]") {
  const auto ds = small_binary(6);
  ExperimentOptions opts;
  opts.folds = 3;
  opts.metric = GMeanVariant::paper_literal;
  const auto results = run_cv_experiment(ds, {ClassifierSpec(Family::gaussian_nb)}, EnsembleMode::imbalmed, opts);
  for (const auto& r : results) {
    CHECK(r.test_gmean == r.test_gmean_paper_literal);
    CHECK(r.test_gmean_paper_literal <= r.test_gmean_recall_geomean + 1e-9);
  }
}
