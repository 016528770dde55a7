#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/balance.hpp"
#include "imbalmed/classifier.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/ensemble.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/metrics.hpp"

namespace imbalmed {

/**
 * Experiment description, read from a flat JSON object whose keys match the
 * member names. Relative CSV paths resolve against the config file's
 * directory. `r` may be omitted for 2- and 3-class tasks.
 */
struct ExperimentConfig {
  std::vector<std::string> modalities;
  std::string labels;
  std::string task = "task";
  std::optional<double> r;
  std::size_t folds = 10;
  double val_fraction = 0.1;
  std::vector<std::string> classifiers;
  GMeanVariant metric = GMeanVariant::recall_geomean;
  std::uint64_t seed = 0;
  std::string output;
  std::string fold_csv;
  std::vector<EnsembleMode> modes{EnsembleMode::imbalmed};
  KindHints kind_hints;

  std::filesystem::path base_dir;  // not part of the document

  void validate() const {
    require(!modalities.empty(), ErrorCode::invalid_argument, "config lists no modality CSV");
    require(!labels.empty(), ErrorCode::invalid_argument, "config has no labels path");
    require(folds >= 2, ErrorCode::invalid_argument, "folds must be at least 2");
    require(val_fraction >= 0.0 && val_fraction < 1.0, ErrorCode::invalid_argument, "val_fraction must be in [0, 1)");
    require(!classifiers.empty(), ErrorCode::invalid_argument, "config lists no classifier");
    for (const auto& tag : classifiers) (void)ClassifierSpec::parse(tag);
    require(!modes.empty(), ErrorCode::invalid_argument, "config lists no mode");
    if (r) (void)representativeness_steps(*r);
  }

  std::vector<ClassifierSpec> classifier_specs() const {
    std::vector<ClassifierSpec> specs;
    for (const auto& tag : classifiers) specs.push_back(ClassifierSpec::parse(tag));
    return specs;
  }

  std::string resolve(const std::string& path) const {
    const std::filesystem::path p(path);
    return p.is_absolute() || base_dir.empty() ? p.string() : (base_dir / p).string();
  }

  bool has_mode(EnsembleMode m) const { return std::find(modes.begin(), modes.end(), m) != modes.end(); }

  /// Everything that determines the report; output paths are left out so
  /// two runs that only differ in destination echo identically.
  nlohmann::json echo(double effective_r) const {
    nlohmann::json modes_json = nlohmann::json::array();
    for (auto m : modes) modes_json.push_back(mode_name(m));
    nlohmann::json hints = nlohmann::json::object();
    for (const auto& [name, kind] : kind_hints) hints[name] = kind == FeatureKind::numeric ? "numeric" : "categorical";
    return {{"modalities", modalities},
            {"labels", labels},
            {"task", task},
            {"r", effective_r},
            {"folds", folds},
            {"val_fraction", val_fraction},
            {"classifiers", classifiers},
            {"metric", variant_name(metric)},
            {"seed", seed},
            {"modes", modes_json},
            {"kind_hints", hints}};
  }
};

/// The r used when the config leaves it out: 0.1 for binary, 0.11 for ternary.
inline double default_r(std::size_t classes) {
  if (classes == 2) return 0.1;
  if (classes == 3) return 0.11;
  throw Error(ErrorCode::invalid_argument,
              "no default r for " + std::to_string(classes) + " classes; set r in the config or pass --r");
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), ErrorCode::parse, "config must be a JSON object");
  static const std::set<std::string> known{"modalities", "labels",  "task",   "r",     "folds",
                                           "val_fraction", "classifiers", "metric", "seed", "output",
                                           "fold_csv",   "modes",   "kind_hints"};
  for (const auto& [key, value] : j.items()) {
    require(known.contains(key), ErrorCode::parse, "unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  try {
    cfg.modalities = j.at("modalities").get<std::vector<std::string>>();
    cfg.labels = j.at("labels").get<std::string>();
    cfg.task = j.value("task", cfg.task);
    if (j.contains("r") && !j.at("r").is_null()) cfg.r = j.at("r").get<double>();
    cfg.folds = j.value("folds", cfg.folds);
    cfg.val_fraction = j.value("val_fraction", cfg.val_fraction);
    cfg.classifiers = j.at("classifiers").get<std::vector<std::string>>();
    if (j.contains("metric")) cfg.metric = parse_variant(j.at("metric").get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output = j.value("output", cfg.output);
    cfg.fold_csv = j.value("fold_csv", cfg.fold_csv);
    if (j.contains("modes")) {
      cfg.modes.clear();
      for (const auto& m : j.at("modes")) {
        const EnsembleMode mode = parse_mode(m.get<std::string>());
        if (!cfg.has_mode(mode)) cfg.modes.push_back(mode);
      }
    }
    if (j.contains("kind_hints")) {
      for (const auto& [name, kind] : j.at("kind_hints").items()) {
        const auto k = kind.get<std::string>();
        require(k == "numeric" || k == "categorical", ErrorCode::parse,
                "kind hint for '" + name + "' must be 'numeric' or 'categorical'");
        cfg.kind_hints[name] = k == "numeric" ? FeatureKind::numeric : FeatureKind::categorical;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, "config '" + path + "': " + e.what());
  }
  ExperimentConfig cfg = config_from_json(j);
  cfg.base_dir = std::filesystem::path(path).parent_path();
  return cfg;
}

inline MultimodalDataset load_dataset(const ExperimentConfig& cfg) {
  std::vector<ModalityTable> tables;
  for (const auto& path : cfg.modalities) tables.push_back(load_modality_csv(cfg.resolve(path), cfg.kind_hints));
  return align(tables, cfg.resolve(cfg.labels));
}

}  // namespace imbalmed
