#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imbalmed/dataset.hpp"
#include "imbalmed/ensemble.hpp"
#include "imbalmed/metrics.hpp"
#include "imbalmed/parallel.hpp"
#include "imbalmed/stats.hpp"

namespace imbalmed {

struct ExperimentOptions {
  std::size_t folds = 10;
  double val_fraction = 0.1;
  double r = 0.1;
  GMeanVariant metric = GMeanVariant::recall_geomean;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  PreprocessOptions preprocess;
};

struct CandidateScore {
  std::string tag;
  std::optional<double> val_gmean;  // percent; empty when training failed
  std::string error;
};

/// Outcome of one fold for one mode. G-means are percentages.
struct FoldResult {
  std::size_t fold_index = 0;
  EnsembleMode mode = EnsembleMode::imbalmed;
  std::vector<CandidateScore> candidates;
  std::size_t selected_index = 0;
  std::string selected;
  double test_gmean = 0.0;  // under the experiment's metric
  double test_gmean_recall_geomean = 0.0;
  double test_gmean_paper_literal = 0.0;
  ConfusionMatrix test_confusion;
};

inline constexpr std::uint64_t kFoldModelStream = 0x666f6c646dULL;

inline std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold) {
  Rng rng = make_rng({seed, kFoldModelStream, fold});
  return rng();
}

inline ConfusionMatrix evaluate(const MultimodalEnsemble& ens, const MultimodalDataset& ds,
                                std::span<const std::size_t> rows) {
  const auto predicted = predict_classes(ens, ds, rows);
  return ConfusionMatrix::from_predictions(gather_labels(ds.labels(), rows), predicted, ds.class_count());
}

/**
 * One fold: trains every candidate, scores it on the validation rows (the
 * training rows when the fold has no validation slice), keeps the best
 * (first on ties) and reports its test G-mean.
 */
inline FoldResult run_fold(const MultimodalDataset& ds, const FoldSplit& split, const std::vector<ClassifierSpec>& specs,
                           EnsembleMode mode, const ExperimentOptions& options) {
  require(!specs.empty(), ErrorCode::invalid_argument, "no candidate classifier");
  FoldResult result;
  result.fold_index = split.fold_index;
  result.mode = mode;

  const std::uint64_t seed = fold_seed(options.seed, split.fold_index);
  const auto& score_rows = split.val_idx.empty() ? split.train_idx : split.val_idx;
  TrainOptions train_options{options.preprocess, 1};

  std::optional<MultimodalEnsemble> best;
  double best_score = -1.0;
  std::string failures;
  for (std::size_t c = 0; c < specs.size(); ++c) {
    CandidateScore score{specs[c].tag(), std::nullopt, {}};
    try {
      auto ens = train(ds, split, specs[c], options.r, mode, seed, train_options);
      const double val = 100.0 * gmean(evaluate(ens, ds, score_rows), options.metric);
      score.val_gmean = val;
      if (val > best_score) {
        best_score = val;
        best = std::move(ens);
        result.selected_index = c;
        result.selected = score.tag;
      }
    } catch (const Error& e) {
      score.error = e.what();
      failures += "\n  " + score.tag + ": " + e.what();
    }
    result.candidates.push_back(std::move(score));
  }
  require(best.has_value(), ErrorCode::experiment_failed,
          "fold " + std::to_string(split.fold_index) + ": no candidate trained successfully" + failures);

  result.test_confusion = evaluate(*best, ds, split.test_idx);
  result.test_gmean_recall_geomean = 100.0 * gmean(result.test_confusion, GMeanVariant::recall_geomean);
  result.test_gmean_paper_literal = 100.0 * gmean(result.test_confusion, GMeanVariant::paper_literal);
  result.test_gmean = options.metric == GMeanVariant::recall_geomean ? result.test_gmean_recall_geomean
                                                                     : result.test_gmean_paper_literal;
  return result;
}

/// Folds run in parallel; results are ordered by fold index.
inline std::vector<FoldResult> run_cv_experiment(const MultimodalDataset& ds, const std::vector<FoldSplit>& folds,
                                                 const std::vector<ClassifierSpec>& specs, EnsembleMode mode,
                                                 const ExperimentOptions& options) {
  std::vector<FoldResult> results(folds.size());
  parallel_for(folds.size(), options.threads,
               [&](std::size_t f) { results[f] = run_fold(ds, folds[f], specs, mode, options); });
  return results;
}

inline std::vector<FoldResult> run_cv_experiment(const MultimodalDataset& ds, const std::vector<ClassifierSpec>& specs,
                                                 EnsembleMode mode, const ExperimentOptions& options) {
  return run_cv_experiment(ds, stratified_kfold(ds, options.folds, options.val_fraction, options.seed), specs, mode,
                           options);
}

struct MethodSummary {
  std::vector<double> per_fold;  // test G-mean percentages
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation across folds
};

inline MethodSummary summarize(const std::vector<FoldResult>& results) {
  MethodSummary s;
  for (const auto& r : results) s.per_fold.push_back(r.test_gmean);
  s.mean = stats::mean(s.per_fold);
  s.std = stats::sample_std(s.per_fold);
  return s;
}

/// "W"/"L" when one side wins more folds, "T" otherwise; "*" marks p <= 0.05.
inline std::string annotate(const stats::WinTieLoss& wtl, double p, double alpha = 0.05) {
  if (wtl.win == wtl.loss) return "T";
  std::string out = wtl.win > wtl.loss ? "W" : "L";
  if (p <= alpha) out += "*";
  return out;
}

struct ComparisonReport {
  std::vector<FoldResult> imbalmed;
  std::vector<FoldResult> baseline;
  MethodSummary imbalmed_summary;
  MethodSummary baseline_summary;
  stats::TTestResult ttest;
  stats::WinTieLoss wtl;
  std::string annotation;
};

/// Pairs two fold-aligned result lists (first = proposed method).
inline ComparisonReport compare_results(std::vector<FoldResult> first, std::vector<FoldResult> second) {
  require(first.size() == second.size(), ErrorCode::dimension_mismatch, "compared runs differ in fold count");
  ComparisonReport report;
  report.imbalmed = std::move(first);
  report.baseline = std::move(second);
  report.imbalmed_summary = summarize(report.imbalmed);
  report.baseline_summary = summarize(report.baseline);
  report.ttest = stats::paired_t_test(report.imbalmed_summary.per_fold, report.baseline_summary.per_fold);
  report.wtl = stats::win_tie_loss(report.imbalmed_summary.per_fold, report.baseline_summary.per_fold);
  report.annotation = annotate(report.wtl, report.ttest.p);
  return report;
}

/// IMBALMED against the unbalanced baseline on identical folds and seeds.
inline ComparisonReport compare_methods(const MultimodalDataset& ds, const std::vector<ClassifierSpec>& specs,
                                        const ExperimentOptions& options) {
  const auto folds = stratified_kfold(ds, options.folds, options.val_fraction, options.seed);
  auto balanced = run_cv_experiment(ds, folds, specs, EnsembleMode::imbalmed, options);
  auto baseline = run_cv_experiment(ds, folds, specs, EnsembleMode::unbalanced_baseline, options);
  return compare_results(std::move(balanced), std::move(baseline));
}

}  // namespace imbalmed
