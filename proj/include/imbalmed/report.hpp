#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/balance.hpp"
#include "imbalmed/config.hpp"
#include "imbalmed/csv.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/experiment.hpp"

namespace imbalmed {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "imbalmed-report";
inline constexpr int kReportSchemaVersion = 1;

struct MethodRun {
  EnsembleMode mode;
  std::vector<FoldResult> folds;
};

/// In-memory form of the report; `to_json` gives the document written to disk.
struct ReportDocument {
  nlohmann::json config;
  std::uint64_t seed = 0;
  double r = 0.0;
  std::size_t subsets = 0;
  nlohmann::json dataset;
  std::vector<MethodRun> methods;
  std::optional<ComparisonReport> comparison;

  const MethodRun* method(EnsembleMode mode) const {
    for (const auto& m : methods) {
      if (m.mode == mode) return &m;
    }
    return nullptr;
  }
};

namespace detail {

/// Non-finite values (an infinite t statistic) serialize as null.
inline nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

inline nlohmann::json fold_json(const FoldResult& f) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : f.candidates) {
    nlohmann::json entry{{"tag", c.tag}, {"val_gmean", c.val_gmean ? nlohmann::json(*c.val_gmean) : nlohmann::json(nullptr)}};
    if (!c.error.empty()) entry["error"] = c.error;
    candidates.push_back(std::move(entry));
  }
  return {{"fold", f.fold_index},
          {"selected", f.selected},
          {"test_gmean", f.test_gmean},
          {"test_gmean_recall_geomean", f.test_gmean_recall_geomean},
          {"test_gmean_paper_literal", f.test_gmean_paper_literal},
          {"confusion", f.test_confusion.to_rows()},
          {"candidates", candidates}};
}

}  // namespace detail

inline nlohmann::json dataset_summary(const MultimodalDataset& ds) {
  nlohmann::json modalities = nlohmann::json::array();
  for (const auto& t : ds.modalities()) modalities.push_back({{"name", t.name()}, {"features", t.cols()}});
  std::vector<std::string> names;
  for (std::size_t k = 0; k < ds.class_count(); ++k) names.push_back(ds.label_space().name(static_cast<ClassIndex>(k)));
  return {{"samples", ds.size()},
          {"classes", names},
          {"class_counts", class_counts(ds.labels(), ds.class_count())},
          {"modalities", modalities}};
}

inline nlohmann::json to_json(const ReportDocument& doc) {
  nlohmann::json methods = nlohmann::json::object();
  for (const auto& m : doc.methods) {
    nlohmann::json folds = nlohmann::json::array();
    std::vector<std::string> best;
    for (const auto& f : m.folds) {
      folds.push_back(detail::fold_json(f));
      best.push_back(f.selected);
    }
    const MethodSummary s = summarize(m.folds);
    methods[std::string(mode_name(m.mode))] = {
        {"folds", folds},
        {"summary", {{"mean", s.mean}, {"std", s.std}, {"per_fold", s.per_fold}, {"best_classifier_per_fold", best}}}};
  }

  nlohmann::json out{{"schema", kReportSchema},
                     {"schema_version", kReportSchemaVersion},
                     {"tool_version", kToolVersion},
                     {"seed", doc.seed},
                     {"config", doc.config},
                     {"dataset", doc.dataset},
                     {"r", doc.r},
                     {"subsets", doc.subsets},
                     {"methods", methods}};
  if (doc.comparison) {
    const auto& c = *doc.comparison;
    out["comparison"] = {{"first", mode_name(EnsembleMode::imbalmed)},
                         {"second", mode_name(EnsembleMode::unbalanced_baseline)},
                         {"first_per_fold", c.imbalmed_summary.per_fold},
                         {"second_per_fold", c.baseline_summary.per_fold},
                         {"t", detail::finite_or_null(c.ttest.t)},
                         {"p", c.ttest.p},
                         {"df", c.ttest.df},
                         {"win", c.wtl.win},
                         {"tie", c.wtl.tie},
                         {"loss", c.wtl.loss},
                         {"annotation", c.annotation}};
  }
  return out;
}

inline std::string render(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

/**
 * Runs every configured mode on one shared set of folds. With both modes the
 * comparison block pairs IMBALMED (first) against the baseline (second).
 */
inline ReportDocument run_experiment(const ExperimentConfig& cfg, const MultimodalDataset& ds, unsigned threads) {
  ReportDocument doc;
  doc.seed = cfg.seed;
  doc.r = cfg.r ? *cfg.r : default_r(ds.class_count());
  doc.subsets = static_cast<std::size_t>(representativeness_count(ds.class_count(), doc.r));
  require(doc.subsets > 0 || !cfg.has_mode(EnsembleMode::imbalmed), ErrorCode::invalid_argument,
          "r=" + csv::format_number(doc.r) + " admits no representativeness vector for " +
              std::to_string(ds.class_count()) + " classes");
  doc.config = cfg.echo(doc.r);
  doc.dataset = dataset_summary(ds);

  ExperimentOptions options;
  options.folds = cfg.folds;
  options.val_fraction = cfg.val_fraction;
  options.r = doc.r;
  options.metric = cfg.metric;
  options.seed = cfg.seed;
  options.threads = threads;

  const auto specs = cfg.classifier_specs();
  const auto folds = stratified_kfold(ds, options.folds, options.val_fraction, options.seed);
  for (EnsembleMode mode : cfg.modes) {
    doc.methods.push_back({mode, run_cv_experiment(ds, folds, specs, mode, options)});
  }
  const auto* first = doc.method(EnsembleMode::imbalmed);
  const auto* second = doc.method(EnsembleMode::unbalanced_baseline);
  if (first && second) doc.comparison = compare_results(first->folds, second->folds);
  return doc;
}

/// Flat per-fold table for plotting.
inline void write_fold_csv(const ReportDocument& doc, std::ostream& out) {
  csv::write_record(out, {"fold", "method", "selected", "test_gmean", "test_gmean_recall_geomean",
                          "test_gmean_paper_literal"});
  for (const auto& m : doc.methods) {
    for (const auto& f : m.folds) {
      csv::write_record(out, {std::to_string(f.fold_index), std::string(mode_name(m.mode)), f.selected,
                              csv::format_number(f.test_gmean), csv::format_number(f.test_gmean_recall_geomean),
                              csv::format_number(f.test_gmean_paper_literal)});
    }
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

}  // namespace imbalmed
