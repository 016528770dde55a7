#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/balance.hpp"
#include "imbalmed/classifiers.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/parallel.hpp"
#include "imbalmed/preprocess.hpp"

namespace imbalmed {

enum class EnsembleMode { imbalmed, unbalanced_baseline };

inline constexpr std::string_view mode_name(EnsembleMode mode) {
  return mode == EnsembleMode::imbalmed ? "imbalmed" : "unbalanced_baseline";
}

inline EnsembleMode parse_mode(std::string_view name) {
  if (name == "imbalmed") return EnsembleMode::imbalmed;
  if (name == "unbalanced_baseline") return EnsembleMode::unbalanced_baseline;
  throw Error(ErrorCode::invalid_argument, "unknown mode '" + std::string(name) + "'");
}

struct EnsembleMember {
  std::optional<RepresentativenessVector> spec;  // empty for the unbalanced baseline
  std::shared_ptr<const Classifier> model;
};

/// The s classifiers of one modality, in enumeration order, sharing one
/// train-fitted preprocessing pipeline.
struct ModalityEnsemble {
  std::size_t modality = 0;
  std::shared_ptr<const PreprocessPipeline> pipeline;
  std::vector<EnsembleMember> members;

  std::size_t size() const noexcept { return members.size(); }
};

struct MultimodalEnsemble {
  std::vector<ModalityEnsemble> modalities;
  LabelSpace label_space;
  double r = 0.0;
  EnsembleMode mode = EnsembleMode::imbalmed;

  std::size_t member_count() const {
    std::size_t n = 0;
    for (const auto& m : modalities) n += m.size();
    return n;
  }
};

struct TrainOptions {
  PreprocessOptions preprocess;
  unsigned threads = 1;
};

/**
 * Componentwise mean of probability vectors.
 *
 * Each component is summed in ascending order of its values, so the result
 * is exactly invariant to the order of `parts`.
 */
inline std::vector<double> average_distributions(std::span<const std::vector<double>> parts) {
  require(!parts.empty(), ErrorCode::invalid_argument, "cannot average zero distributions");
  const std::size_t c = parts.front().size();
  std::vector<double> out(c, 0.0);
  std::vector<double> column(parts.size());
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      require(parts[i].size() == c, ErrorCode::dimension_mismatch, "distributions differ in class count");
      column[i] = parts[i][k];
    }
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    out[k] = sum / static_cast<double>(parts.size());
  }
  return out;
}

/// argmax with ties resolved to the lowest class index.
inline ClassIndex argmax_class(std::span<const double> p) {
  require(!p.empty(), ErrorCode::invalid_argument, "empty probability vector");
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return static_cast<ClassIndex>(best);
}

inline constexpr std::uint64_t kModelStream = 0x6d6f64656cULL;

inline std::uint64_t member_seed(std::uint64_t seed, std::size_t modality, std::size_t member) {
  Rng rng = make_rng({seed, kModelStream, modality, member});
  return rng();
}

/**
 * Trains the ensemble on the rows `train_idx` of `ds`.
 *
 * Per modality one preprocessing pipeline is fitted on all training rows. In
 * imbalmed mode the balanced subsets are drawn once from the training labels
 * and the same subset j is used for every modality; one classifier is fitted
 * per (modality, subset). The baseline fits one classifier per modality on
 * the full training pool.
 */
inline MultimodalEnsemble train(const MultimodalDataset& ds, std::span<const std::size_t> train_idx,
                                const ClassifierSpec& spec, double r, EnsembleMode mode, std::uint64_t seed,
                                const TrainOptions& options = {}) {
  const std::size_t m = ds.modality_count();
  const std::size_t c = ds.class_count();
  require(!train_idx.empty(), ErrorCode::invalid_argument, "empty training split");
  const std::vector<ClassIndex> y_train = gather_labels(ds.labels(), train_idx);

  std::vector<BalancedSubset> subsets;
  if (mode == EnsembleMode::imbalmed) {
    require(representativeness_count(c, r) > 0, ErrorCode::invalid_argument,
            "r=" + csv::format_number(r) + " admits no representativeness vector for " + std::to_string(c) + " classes");
    subsets = build_all_subsets(y_train, c, r, seed);
  }

  std::vector<std::shared_ptr<const PreprocessPipeline>> pipelines(m);
  parallel_for(m, options.threads, [&](std::size_t i) {
    pipelines[i] = std::make_shared<const PreprocessPipeline>(
        PreprocessPipeline::fit(ds.modality(i), train_idx, options.preprocess));
  });

  const std::size_t s = mode == EnsembleMode::imbalmed ? subsets.size() : 1;
  MultimodalEnsemble ens;
  ens.label_space = ds.label_space();
  ens.r = r;
  ens.mode = mode;
  ens.modalities.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    ens.modalities[i].modality = i;
    ens.modalities[i].pipeline = pipelines[i];
    ens.modalities[i].members.resize(s);
  }

  parallel_for(m * s, options.threads, [&](std::size_t cell) {
    const std::size_t i = cell / s;
    const std::size_t j = cell % s;
    const Matrix& X = pipelines[i]->training_matrix();
    const ClassifierSpec member_spec = spec.with_seed(member_seed(seed, i, j));
    EnsembleMember& member = ens.modalities[i].members[j];
    if (mode == EnsembleMode::imbalmed) {
      const auto& subset = subsets[j];
      member.spec = subset.spec;
      member.model = fit_classifier(member_spec, X.select_rows(subset.indices), gather_labels(y_train, subset.indices), c);
    } else {
      member.model = fit_classifier(member_spec, X, y_train, c);
    }
  });
  return ens;
}

inline MultimodalEnsemble train(const MultimodalDataset& ds, const FoldSplit& split, const ClassifierSpec& spec,
                                double r, EnsembleMode mode, std::uint64_t seed, const TrainOptions& options = {}) {
  return train(ds, split.train_idx, spec, r, mode, seed, options);
}

/// Unimodal fusion over an already preprocessed feature vector.
inline std::vector<double> predict_unimodal_features(const ModalityEnsemble& ens, std::span<const double> x) {
  std::vector<std::vector<double>> outputs;
  outputs.reserve(ens.members.size());
  for (const auto& member : ens.members) outputs.push_back(member.model->predict_proba(x));
  return average_distributions(outputs);
}

/// p_i: mean of the member distributions for a raw modality row.
inline std::vector<double> predict_unimodal(const ModalityEnsemble& ens, std::span<const Cell> raw) {
  return predict_unimodal_features(ens, ens.pipeline->apply_row(raw));
}

/// p: mean over modalities of the unimodal distributions.
inline std::vector<double> predict_multimodal(const MultimodalEnsemble& ens,
                                              const std::vector<std::span<const Cell>>& sample) {
  require(sample.size() == ens.modalities.size(), ErrorCode::dimension_mismatch,
          "sample has " + std::to_string(sample.size()) + " modality vectors, ensemble expects " +
              std::to_string(ens.modalities.size()));
  std::vector<std::vector<double>> per_modality;
  per_modality.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) per_modality.push_back(predict_unimodal(ens.modalities[i], sample[i]));
  return average_distributions(per_modality);
}

inline ClassIndex predict_class(const MultimodalEnsemble& ens, const std::vector<std::span<const Cell>>& sample) {
  return argmax_class(predict_multimodal(ens, sample));
}

/// Fused class distributions for rows of `ds`; preprocessing runs batched.
inline Matrix predict_proba(const MultimodalEnsemble& ens, const MultimodalDataset& ds,
                            std::span<const std::size_t> rows) {
  require(ds.modality_count() == ens.modalities.size(), ErrorCode::dimension_mismatch,
          "dataset and ensemble differ in modality count");
  const std::size_t c = ens.label_space.size();
  // member_out[i][j] is an rows x c matrix
  std::vector<std::vector<Matrix>> member_out(ens.modalities.size());
  for (std::size_t i = 0; i < ens.modalities.size(); ++i) {
    const auto& me = ens.modalities[i];
    const Matrix X = me.pipeline->apply(ds.modality(i), rows);
    for (const auto& member : me.members) member_out[i].push_back(member.model->predict_proba_batch(X));
  }
  Matrix fused(rows.size(), c);
  std::vector<std::vector<double>> parts;
  std::vector<std::vector<double>> unimodal;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    unimodal.clear();
    for (const auto& outs : member_out) {
      parts.clear();
      for (const auto& P : outs) parts.emplace_back(P.row(r).begin(), P.row(r).end());
      unimodal.push_back(average_distributions(parts));
    }
    const auto p = average_distributions(unimodal);
    std::copy(p.begin(), p.end(), fused.row(r).begin());
  }
  return fused;
}

inline std::vector<ClassIndex> predict_classes(const MultimodalEnsemble& ens, const MultimodalDataset& ds,
                                               std::span<const std::size_t> rows) {
  const Matrix p = predict_proba(ens, ds, rows);
  std::vector<ClassIndex> out(p.rows());
  for (std::size_t r = 0; r < p.rows(); ++r) out[r] = argmax_class(p.row(r));
  return out;
}

inline constexpr int kEnsembleFormatVersion = 1;

inline nlohmann::json ensemble_to_json(const MultimodalEnsemble& ens) {
  nlohmann::json modalities = nlohmann::json::array();
  for (const auto& me : ens.modalities) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& member : me.members) {
      nlohmann::json entry = {{"model", member.model->to_json()}};
      if (member.spec) {
        entry["index"] = member.spec->index;
        entry["weights"] = member.spec->weights;
        entry["fractions"] = member.spec->fractions;
      }
      members.push_back(std::move(entry));
    }
    modalities.push_back({{"modality", me.modality}, {"pipeline", me.pipeline->to_json()}, {"members", members}});
  }
  return {{"format", "imbalmed-ensemble"},
          {"version", kEnsembleFormatVersion},
          {"mode", mode_name(ens.mode)},
          {"r", ens.r},
          {"classes", ens.label_space.names()},
          {"modalities", std::move(modalities)}};
}

inline MultimodalEnsemble ensemble_from_json(const nlohmann::json& j) {
  require(j.value("format", "") == "imbalmed-ensemble", ErrorCode::parse, "not an imbalmed ensemble document");
  require(j.at("version").get<int>() == kEnsembleFormatVersion, ErrorCode::parse,
          "unsupported ensemble format version " + j.at("version").dump());
  MultimodalEnsemble ens;
  ens.mode = parse_mode(j.at("mode").get<std::string>());
  ens.r = j.at("r").get<double>();
  ens.label_space = LabelSpace(j.at("classes").get<std::vector<std::string>>());
  for (const auto& jm : j.at("modalities")) {
    ModalityEnsemble me;
    me.modality = jm.at("modality").get<std::size_t>();
    me.pipeline = std::make_shared<const PreprocessPipeline>(PreprocessPipeline::from_json(jm.at("pipeline")));
    for (const auto& entry : jm.at("members")) {
      EnsembleMember member;
      if (entry.contains("weights")) {
        RepresentativenessVector v;
        v.index = entry.at("index").get<std::size_t>();
        v.r = ens.r;
        v.weights = entry.at("weights").get<std::vector<int>>();
        v.fractions = entry.at("fractions").get<std::vector<double>>();
        member.spec = std::move(v);
      }
      member.model = classifier_from_json(entry.at("model"));
      me.members.push_back(std::move(member));
    }
    ens.modalities.push_back(std::move(me));
  }
  return ens;
}

inline void save_ensemble(const MultimodalEnsemble& ens, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  out << ensemble_to_json(ens).dump(1) << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

inline MultimodalEnsemble load_ensemble(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  try {
    return ensemble_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, "'" + path + "': " + e.what());
  }
}

}  // namespace imbalmed
