#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/matrix.hpp"

namespace imbalmed {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (double v : m.data()) data.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& data = j.at("data");
  require(data.size() == m.rows() * m.cols(), ErrorCode::parse, "matrix payload has the wrong length");
  for (std::size_t i = 0; i < data.size(); ++i) {
    m(i / m.cols(), i % m.cols()) = data[i].is_null() ? kMissing : data[i].get<double>();
  }
  return m;
}

}  // namespace detail

/**
 * k-nearest-neighbour imputer over a reference matrix that may itself hold
 * missing (NaN) cells.
 *
 * Distance between a query and a reference row uses only mutually observed
 * columns O, rescaled to the full width D:
 *   d(x, y) = sqrt(D / |O| * sum_{j in O} (x_j - y_j)^2).
 * A missing cell j is filled with the unweighted mean of column j over the k
 * closest reference rows that observe j (ties: lower reference row first).
 * When no reference row observes j, the column fallback value is used. A
 * row sharing no observed column with any reference row is an error.
 */
class KnnImputer {
 public:
  KnnImputer() = default;
  KnnImputer(Matrix reference, std::size_t k, std::vector<double> fallback)
      : reference_(std::move(reference)), k_(k), fallback_(std::move(fallback)) {
    require(k_ >= 1, ErrorCode::invalid_argument, "imputer k must be at least 1");
    require(fallback_.size() == reference_.cols(), ErrorCode::dimension_mismatch, "fallback width mismatch");
  }

  std::size_t k() const noexcept { return k_; }
  const Matrix& reference() const noexcept { return reference_; }
  const std::vector<double>& fallback() const noexcept { return fallback_; }

  static std::optional<double> distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    std::size_t observed = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (std::isnan(a[j]) || std::isnan(b[j])) continue;
      const double diff = a[j] - b[j];
      sum += diff * diff;
      ++observed;
    }
    if (observed == 0) return std::nullopt;
    return std::sqrt(static_cast<double>(a.size()) / static_cast<double>(observed) * sum);
  }

  void impute_row(std::span<double> row) const {
    require(row.size() == reference_.cols(), ErrorCode::dimension_mismatch, "imputer query width mismatch");
    if (std::none_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) return;

    std::vector<std::pair<double, std::size_t>> neighbours;
    neighbours.reserve(reference_.rows());
    for (std::size_t r = 0; r < reference_.rows(); ++r) {
      if (auto d = distance(row, reference_.row(r))) neighbours.emplace_back(*d, r);
    }
    require(!neighbours.empty(), ErrorCode::no_observed_overlap,
            "row shares no observed column with any reference row");
    std::sort(neighbours.begin(), neighbours.end());

    const std::vector<double> query(row.begin(), row.end());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!std::isnan(query[j])) continue;
      double sum = 0.0;
      std::size_t used = 0;
      for (const auto& [d, r] : neighbours) {
        const double v = reference_(r, j);
        if (std::isnan(v)) continue;
        sum += v;
        if (++used == k_) break;
      }
      row[j] = used ? sum / static_cast<double>(used) : fallback_[j];
    }
  }

  Matrix transform(Matrix rows) const {
    for (std::size_t r = 0; r < rows.rows(); ++r) impute_row(rows.row(r));
    return rows;
  }

 private:
  Matrix reference_;
  std::size_t k_ = 5;
  std::vector<double> fallback_;
};

struct PreprocessOptions {
  double max_missing_fraction = 0.5;  // strictly more missing than this drops the feature
  std::size_t k = 5;
};

struct ApplyDiagnostics {
  std::size_t unseen_categories = 0;
};

/**
 * Train-fitted preprocessing for one modality.
 *
 * Stages, in order: drop sparse features, one-hot encode categoricals,
 * z-score every output column with training statistics, k-NN impute in the
 * normalized space. A missing categorical marks all of its indicator cells
 * missing; an unseen category encodes as all-zero indicators.
 */
class PreprocessPipeline {
 public:
  struct KeptFeature {
    std::size_t source_column = 0;
    std::string name;
    FeatureKind kind = FeatureKind::numeric;
    std::vector<std::string> categories;  // sorted training categories, categorical only
  };

  PreprocessPipeline() = default;

  static PreprocessPipeline fit(const ModalityTable& table, std::span<const std::size_t> rows,
                                const PreprocessOptions& options = {}) {
    require(rows.size() >= options.k + 1, ErrorCode::insufficient_rows,
            "preprocessing '" + table.name() + "' needs at least k+1=" + std::to_string(options.k + 1) +
                " training rows, got " + std::to_string(rows.size()));

    PreprocessPipeline p;
    p.source_names_ = table.feature_names();
    p.source_kinds_ = table.feature_kinds();

    for (std::size_t c = 0; c < table.cols(); ++c) {
      std::size_t missing = 0;
      for (std::size_t r : rows) missing += is_missing(table.cell(r, c)) ? 1 : 0;
      const double fraction = static_cast<double>(missing) / static_cast<double>(rows.size());
      if (fraction > options.max_missing_fraction) {
        p.dropped_.push_back(table.feature_names()[c]);
        continue;
      }
      KeptFeature f{c, table.feature_names()[c], table.feature_kinds()[c], {}};
      if (f.kind == FeatureKind::categorical) {
        std::set<std::string> seen;
        for (std::size_t r : rows) {
          if (const auto* s = std::get_if<std::string>(&table.cell(r, c))) seen.insert(*s);
        }
        f.categories.assign(seen.begin(), seen.end());
      }
      p.kept_.push_back(std::move(f));
    }
    require(p.width() > 0, ErrorCode::all_features_dropped,
            "every feature of '" + table.name() + "' was dropped as too sparse");

    Matrix encoded = p.encode(table, rows, nullptr);
    const std::size_t width = encoded.cols();
    p.means_.assign(width, 0.0);
    p.stds_.assign(width, 0.0);
    for (std::size_t j = 0; j < width; ++j) {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t r = 0; r < encoded.rows(); ++r) {
        if (!std::isnan(encoded(r, j))) {
          sum += encoded(r, j);
          ++n;
        }
      }
      const double mean = n ? sum / static_cast<double>(n) : 0.0;
      double ss = 0.0;
      for (std::size_t r = 0; r < encoded.rows(); ++r) {
        if (!std::isnan(encoded(r, j))) ss += (encoded(r, j) - mean) * (encoded(r, j) - mean);
      }
      p.means_[j] = mean;
      p.stds_[j] = n ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
    }
    p.normalize(encoded);

    // Normalized columns have training mean 0, which is also the no-donor fallback.
    p.imputer_ = KnnImputer(encoded, options.k, std::vector<double>(width, 0.0));
    p.training_matrix_ = p.imputer_.transform(std::move(encoded));
    return p;
  }

  Matrix apply(const ModalityTable& table, std::span<const std::size_t> rows,
               ApplyDiagnostics* diagnostics = nullptr) const {
    check_schema(table);
    Matrix m = encode(table, rows, diagnostics);
    normalize(m);
    return imputer_.transform(std::move(m));
  }

  std::vector<double> apply_row(std::span<const Cell> raw, ApplyDiagnostics* diagnostics = nullptr) const {
    require(raw.size() == source_names_.size(), ErrorCode::dimension_mismatch,
            "raw row has " + std::to_string(raw.size()) + " cells, pipeline expects " +
                std::to_string(source_names_.size()));
    std::vector<double> out(width());
    encode_row(raw, out, diagnostics);
    normalize_row(out);
    imputer_.impute_row(out);
    return out;
  }

  std::size_t width() const noexcept {
    std::size_t w = 0;
    for (const auto& f : kept_) w += f.kind == FeatureKind::numeric ? 1 : f.categories.size();
    return w;
  }

  std::vector<std::string> output_names() const {
    std::vector<std::string> names;
    for (const auto& f : kept_) {
      if (f.kind == FeatureKind::numeric) {
        names.push_back(f.name);
      } else {
        for (const auto& cat : f.categories) names.push_back(f.name + "=" + cat);
      }
    }
    return names;
  }

  const std::vector<std::string>& dropped_features() const noexcept { return dropped_; }
  const std::vector<KeptFeature>& kept_features() const noexcept { return kept_; }
  const std::vector<double>& means() const noexcept { return means_; }
  const std::vector<double>& stds() const noexcept { return stds_; }
  const KnnImputer& imputer() const noexcept { return imputer_; }
  /// The fit rows after every stage, imputation included.
  const Matrix& training_matrix() const noexcept { return training_matrix_; }

  nlohmann::json to_json() const {
    nlohmann::json kept = nlohmann::json::array();
    for (const auto& f : kept_) {
      kept.push_back({{"source_column", f.source_column},
                      {"name", f.name},
                      {"kind", f.kind == FeatureKind::numeric ? "numeric" : "categorical"},
                      {"categories", f.categories}});
    }
    std::vector<std::string> kinds;
    for (auto k : source_kinds_) kinds.emplace_back(k == FeatureKind::numeric ? "numeric" : "categorical");
    return {{"source_features", source_names_},
            {"source_kinds", kinds},
            {"dropped", dropped_},
            {"kept", kept},
            {"means", means_},
            {"stds", stds_},
            {"k", imputer_.k()},
            {"reference", detail::matrix_to_json(imputer_.reference())},
            {"training_matrix", detail::matrix_to_json(training_matrix_)}};
  }

  static PreprocessPipeline from_json(const nlohmann::json& j) {
    auto parse_kind = [](const std::string& s) {
      require(s == "numeric" || s == "categorical", ErrorCode::parse, "unknown feature kind '" + s + "'");
      return s == "numeric" ? FeatureKind::numeric : FeatureKind::categorical;
    };
    PreprocessPipeline p;
    p.source_names_ = j.at("source_features").get<std::vector<std::string>>();
    for (const auto& k : j.at("source_kinds")) p.source_kinds_.push_back(parse_kind(k.get<std::string>()));
    p.dropped_ = j.at("dropped").get<std::vector<std::string>>();
    for (const auto& f : j.at("kept")) {
      p.kept_.push_back({f.at("source_column").get<std::size_t>(), f.at("name").get<std::string>(),
                         parse_kind(f.at("kind").get<std::string>()),
                         f.at("categories").get<std::vector<std::string>>()});
    }
    p.means_ = j.at("means").get<std::vector<double>>();
    p.stds_ = j.at("stds").get<std::vector<double>>();
    Matrix reference = detail::matrix_from_json(j.at("reference"));
    p.imputer_ = KnnImputer(std::move(reference), j.at("k").get<std::size_t>(), std::vector<double>(p.means_.size(), 0.0));
    p.training_matrix_ = detail::matrix_from_json(j.at("training_matrix"));
    return p;
  }

 private:
  void check_schema(const ModalityTable& table) const {
    require(table.feature_names() == source_names_ && table.feature_kinds() == source_kinds_,
            ErrorCode::dimension_mismatch, "table '" + table.name() + "' does not match the fitted feature schema");
  }

  Matrix encode(const ModalityTable& table, std::span<const std::size_t> rows, ApplyDiagnostics* diagnostics) const {
    Matrix m(rows.size(), width());
    for (std::size_t i = 0; i < rows.size(); ++i) encode_row(table.row(rows[i]), m.row(i), diagnostics);
    return m;
  }

  void encode_row(std::span<const Cell> raw, std::span<double> out, ApplyDiagnostics* diagnostics) const {
    std::size_t j = 0;
    for (const auto& f : kept_) {
      const Cell& cell = raw[f.source_column];
      if (f.kind == FeatureKind::numeric) {
        out[j++] = is_missing(cell) ? kMissing : std::get<double>(cell);
        continue;
      }
      if (is_missing(cell)) {
        for (std::size_t c = 0; c < f.categories.size(); ++c) out[j++] = kMissing;
        continue;
      }
      const auto& token = std::get<std::string>(cell);
      bool matched = false;
      for (const auto& category : f.categories) {
        const bool hit = category == token;
        matched = matched || hit;
        out[j++] = hit ? 1.0 : 0.0;
      }
      if (!matched && diagnostics) ++diagnostics->unseen_categories;
    }
  }

  void normalize_row(std::span<double> row) const {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (std::isnan(row[j])) continue;
      row[j] = (row[j] - means_[j]) / (stds_[j] > 0.0 ? stds_[j] : 1.0);
    }
  }

  void normalize(Matrix& m) const {
    for (std::size_t r = 0; r < m.rows(); ++r) normalize_row(m.row(r));
  }

  std::vector<std::string> source_names_;
  std::vector<FeatureKind> source_kinds_;
  std::vector<std::string> dropped_;
  std::vector<KeptFeature> kept_;
  std::vector<double> means_;
  std::vector<double> stds_;
  KnnImputer imputer_;
  Matrix training_matrix_;
};

}  // namespace imbalmed
