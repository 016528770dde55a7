#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/random.hpp"

namespace imbalmed::synth {

struct ModalitySpec {
  std::string name;
  std::size_t numeric_features = 4;
  std::size_t categorical_features = 0;
  double separation = 2.0;  // distance between class mean vectors, in noise std units
};

struct SynthConfig {
  std::size_t n_samples = 600;
  std::vector<double> class_proportions{0.75, 0.25};
  std::vector<std::string> class_names;  // defaults to class0, class1, ...
  std::vector<ModalitySpec> modalities;
  double missing_rate = 0.0;
  std::uint64_t seed = 0;

  std::size_t classes() const noexcept { return class_proportions.size(); }

  std::string class_name(std::size_t k) const {
    return class_names.empty() ? "class" + std::to_string(k) : class_names.at(k);
  }

  void validate() const {
    require(class_proportions.size() >= 2, ErrorCode::invalid_argument, "need at least 2 class proportions");
    double sum = 0.0;
    for (double p : class_proportions) {
      require(p > 0.0, ErrorCode::invalid_argument, "class proportions must be positive");
      sum += p;
    }
    require(std::fabs(sum - 1.0) <= 1e-9, ErrorCode::invalid_argument, "class proportions must sum to 1");
    require(class_names.empty() || class_names.size() == classes(), ErrorCode::invalid_argument,
            "class_names must match class_proportions");
    if (!class_names.empty()) {
      require(std::is_sorted(class_names.begin(), class_names.end()), ErrorCode::invalid_argument,
              "class_names must be in sorted order so class k keeps index k after loading");
    }
    require(classes() <= 10 || !class_names.empty(), ErrorCode::invalid_argument,
            "more than 10 classes need explicit class_names");
    require(!modalities.empty(), ErrorCode::invalid_argument, "need at least one modality");
    require(missing_rate >= 0.0 && missing_rate < 1.0, ErrorCode::invalid_argument, "missing_rate must be in [0, 1)");
    for (const auto& m : modalities) {
      require(m.separation >= 0.0, ErrorCode::invalid_argument, "separation must be non-negative");
      require(m.numeric_features + m.categorical_features > 0, ErrorCode::invalid_argument,
              "modality '" + m.name + "' has no features");
      require(m.separation == 0.0 || m.numeric_features >= classes(), ErrorCode::invalid_argument,
              "modality '" + m.name + "' needs at least one numeric feature per class to place class means");
    }
  }
};

/// Rounded class sizes summing to n (largest remainder).
inline std::vector<std::size_t> class_sizes(std::size_t n, const std::vector<double>& proportions) {
  std::vector<std::size_t> sizes(proportions.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < proportions.size(); ++k) {
    const double exact = proportions[k] * static_cast<double>(n);
    sizes[k] = static_cast<std::size_t>(std::floor(exact));
    assigned += sizes[k];
    remainders.emplace_back(-(exact - std::floor(exact)), k);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[remainders[i % remainders.size()].second];
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    require(sizes[k] > 0, ErrorCode::invalid_argument,
            "class " + std::to_string(k) + " rounds to zero samples at n=" + std::to_string(n));
  }
  return sizes;
}

/// Class k's mean: separation/sqrt(2) on numeric feature k, 0 elsewhere, so
/// every pair of class means sits exactly `separation` apart.
inline std::vector<double> class_mean(const ModalitySpec& m, std::size_t k) {
  std::vector<double> mean(m.numeric_features, 0.0);
  if (m.separation > 0.0) mean.at(k) = m.separation / std::sqrt(2.0);
  return mean;
}

inline constexpr const char* kCategories[] = {"A", "B", "C"};

/// Category distribution for class k: uniform, tilted towards category
/// k mod 3 by min(0.9, separation / 4).
inline std::vector<double> category_distribution(const ModalitySpec& m, std::size_t k) {
  const double tilt = std::min(0.9, m.separation / 4.0);
  std::vector<double> p(3, (1.0 - tilt) / 3.0);
  p[k % 3] += tilt;
  return p;
}

/// Cells are blanked independently with probability missing_rate, except
/// that a row never loses every cell of a modality (one is kept at random).
inline MultimodalDataset generate(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_samples;
  const std::size_t c = cfg.classes();
  const auto sizes = class_sizes(n, cfg.class_proportions);

  std::vector<ClassIndex> labels;
  labels.reserve(n);
  for (std::size_t k = 0; k < c; ++k) labels.insert(labels.end(), sizes[k], static_cast<ClassIndex>(k));
  {
    Rng rng = make_rng({cfg.seed, 0x6c6162656cULL});
    labels = sample_without_replacement<ClassIndex>(labels, labels.size(), rng);
  }

  const std::size_t width = std::to_string(n).size();
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i + 1);
    ids[i] = "s" + std::string(width - digits.size(), '0') + digits;
  }

  std::vector<ModalityTable> tables;
  for (std::size_t mi = 0; mi < cfg.modalities.size(); ++mi) {
    const ModalitySpec& spec = cfg.modalities[mi];
    std::vector<std::string> names;
    std::vector<FeatureKind> kinds;
    for (std::size_t j = 0; j < spec.numeric_features; ++j) {
      names.push_back("num_" + std::to_string(j + 1));
      kinds.push_back(FeatureKind::numeric);
    }
    for (std::size_t j = 0; j < spec.categorical_features; ++j) {
      names.push_back("cat_" + std::to_string(j + 1));
      kinds.push_back(FeatureKind::categorical);
    }

    std::vector<std::vector<double>> means(c);
    std::vector<std::discrete_distribution<std::size_t>> cat_dist;
    for (std::size_t k = 0; k < c; ++k) {
      means[k] = class_mean(spec, k);
      const auto p = category_distribution(spec, k);
      cat_dist.emplace_back(p.begin(), p.end());
    }

    Rng values = make_rng({cfg.seed, 0x76616c7565ULL, mi});
    Rng blanks = make_rng({cfg.seed, 0x6d697373ULL, mi});
    std::normal_distribution<double> noise(0.0, 1.0);
    std::bernoulli_distribution missing(cfg.missing_rate);

    std::vector<Cell> cells;
    cells.reserve(n * names.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(labels[i]);
      for (std::size_t j = 0; j < spec.numeric_features; ++j) cells.emplace_back(means[k][j] + noise(values));
      for (std::size_t j = 0; j < spec.categorical_features; ++j) {
        cells.emplace_back(std::string(kCategories[cat_dist[k](values)]));
      }
    }
    if (cfg.missing_rate > 0.0) {
      const std::size_t cols = names.size();
      std::vector<char> blank(cols);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (auto& b : blank) count += (b = missing(blanks) ? 1 : 0);
        if (count == cols) blank[std::uniform_int_distribution<std::size_t>(0, cols - 1)(blanks)] = 0;
        for (std::size_t j = 0; j < cols; ++j) {
          if (blank[j]) cells[i * cols + j] = std::monostate{};
        }
      }
    }
    const std::string name = spec.name.empty() ? "modality_" + std::to_string(mi + 1) : spec.name;
    tables.emplace_back(name, std::move(names), std::move(kinds), ids, std::move(cells));
  }

  std::vector<std::string> class_names;
  for (std::size_t k = 0; k < c; ++k) class_names.push_back(cfg.class_name(k));
  return MultimodalDataset(std::move(tables), std::move(labels), LabelSpace(std::move(class_names)));
}

/**
 * Named presets.
 *   binary   - 600 samples, 75/25, two modalities
 *   ternary  - 900 samples, 26/54/20 (diagnostic-task shape), three modalities
 *   adni12m  - 1340 samples, 91.34/8.66 (12-month early-detection shape), three modalities
 */
inline SynthConfig preset(std::string_view name, std::uint64_t seed = 0) {
  SynthConfig cfg;
  cfg.seed = seed;
  if (name == "binary") {
    cfg.n_samples = 600;
    cfg.class_proportions = {0.75, 0.25};
    cfg.modalities = {{"clinical", 5, 1, 2.0}, {"imaging", 4, 0, 1.5}};
    cfg.missing_rate = 0.05;
  } else if (name == "ternary") {
    cfg.n_samples = 900;
    cfg.class_proportions = {0.26, 0.54, 0.20};
    cfg.modalities = {{"assessment", 5, 1, 2.0}, {"biospecimen", 3, 0, 1.5}, {"imaging", 4, 0, 2.0}};
    cfg.missing_rate = 0.05;
  } else if (name == "adni12m") {
    cfg.n_samples = 1340;
    cfg.class_proportions = {0.9134, 0.0866};
    cfg.modalities = {{"assessment", 5, 1, 2.0}, {"biospecimen", 3, 0, 2.0}, {"imaging", 4, 0, 2.0}};
    cfg.missing_rate = 0.05;
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown synthetic preset '" + std::string(name) + "'");
  }
  return cfg;
}

inline SynthConfig config_from_json(const nlohmann::json& j) {
  SynthConfig cfg = j.contains("preset") ? preset(j.at("preset").get<std::string>()) : SynthConfig{};
  cfg.n_samples = j.value("n_samples", cfg.n_samples);
  cfg.class_proportions = j.value("class_proportions", cfg.class_proportions);
  cfg.class_names = j.value("class_names", cfg.class_names);
  cfg.missing_rate = j.value("missing_rate", cfg.missing_rate);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("modalities")) {
    cfg.modalities.clear();
    for (const auto& m : j.at("modalities")) {
      cfg.modalities.push_back({m.value("name", std::string{}), m.value("numeric_features", std::size_t{4}),
                                m.value("categorical_features", std::size_t{0}), m.value("separation", 2.0)});
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace imbalmed::synth
