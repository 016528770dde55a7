#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "imbalmed/csv.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/random.hpp"

namespace imbalmed {

using ClassIndex = int;

enum class FeatureKind { numeric, categorical };

/// A raw table cell: missing, a real value, or a category token.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool is_missing(const Cell& cell) { return std::holds_alternative<std::monostate>(cell); }

/// Ordered class names; a class index is the position in this list.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> classes) : classes_(std::move(classes)) {
    require(classes_.size() >= 2, ErrorCode::invalid_argument, "a label space needs at least 2 classes");
    std::set<std::string> seen(classes_.begin(), classes_.end());
    require(seen.size() == classes_.size(), ErrorCode::invalid_argument, "class names must be unique");
  }

  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::string>& names() const noexcept { return classes_; }
  const std::string& name(ClassIndex k) const { return classes_.at(static_cast<std::size_t>(k)); }

  std::optional<ClassIndex> index_of(std::string_view name) const {
    auto it = std::find(classes_.begin(), classes_.end(), name);
    if (it == classes_.end()) return std::nullopt;
    return static_cast<ClassIndex>(it - classes_.begin());
  }

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  std::vector<std::string> classes_;
};

/// One modality: sample rows by feature columns, row-major.
class ModalityTable {
 public:
  ModalityTable() = default;
  ModalityTable(std::string name, std::vector<std::string> feature_names, std::vector<FeatureKind> feature_kinds,
                std::vector<std::string> sample_ids, std::vector<Cell> cells)
      : name_(std::move(name)),
        feature_names_(std::move(feature_names)),
        feature_kinds_(std::move(feature_kinds)),
        sample_ids_(std::move(sample_ids)),
        cells_(std::move(cells)) {
    require(feature_kinds_.size() == feature_names_.size(), ErrorCode::dimension_mismatch,
            "feature kinds and names differ in length");
    require(cells_.size() == sample_ids_.size() * feature_names_.size(), ErrorCode::dimension_mismatch,
            "cell grid does not match rows x columns");
    std::unordered_set<std::string> seen;
    for (const auto& id : sample_ids_) {
      require(seen.insert(id).second, ErrorCode::duplicate_sample_id, "duplicate sample id '" + id + "'");
    }
    for (std::size_t c = 0; c < cols(); ++c) {
      for (std::size_t r = 0; r < rows(); ++r) {
        const Cell& cell = this->cell(r, c);
        const bool ok = is_missing(cell) || (feature_kinds_[c] == FeatureKind::numeric
                                                 ? std::holds_alternative<double>(cell)
                                                 : std::holds_alternative<std::string>(cell));
        require(ok, ErrorCode::parse, "cell type does not match kind of feature '" + feature_names_[c] + "'");
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t rows() const noexcept { return sample_ids_.size(); }
  std::size_t cols() const noexcept { return feature_names_.size(); }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<FeatureKind>& feature_kinds() const noexcept { return feature_kinds_; }
  const std::vector<std::string>& sample_ids() const noexcept { return sample_ids_; }

  const Cell& cell(std::size_t r, std::size_t c) const { return cells_[r * cols() + c]; }
  std::span<const Cell> row(std::size_t r) const { return {cells_.data() + r * cols(), cols()}; }

  std::size_t missing_count() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), is_missing));
  }

  /// Same schema, rows taken in the given order.
  ModalityTable reorder(std::span<const std::size_t> order) const {
    std::vector<std::string> ids;
    std::vector<Cell> cells;
    ids.reserve(order.size());
    cells.reserve(order.size() * cols());
    for (std::size_t r : order) {
      ids.push_back(sample_ids_.at(r));
      auto src = row(r);
      cells.insert(cells.end(), src.begin(), src.end());
    }
    return ModalityTable(name_, feature_names_, feature_kinds_, std::move(ids), std::move(cells));
  }

  friend bool operator==(const ModalityTable&, const ModalityTable&) = default;

 private:
  std::string name_;
  std::vector<std::string> feature_names_;
  std::vector<FeatureKind> feature_kinds_;
  std::vector<std::string> sample_ids_;
  std::vector<Cell> cells_;
};

/// Row-aligned modalities plus one label per sample.
class MultimodalDataset {
 public:
  MultimodalDataset() = default;
  MultimodalDataset(std::vector<ModalityTable> modalities, std::vector<ClassIndex> labels, LabelSpace label_space)
      : modalities_(std::move(modalities)), labels_(std::move(labels)), label_space_(std::move(label_space)) {
    require(!modalities_.empty(), ErrorCode::invalid_argument, "dataset needs at least one modality");
    sample_ids_ = modalities_.front().sample_ids();
    require(labels_.size() == sample_ids_.size(), ErrorCode::dimension_mismatch, "label count differs from rows");
    for (const auto& m : modalities_) {
      require(m.sample_ids() == sample_ids_, ErrorCode::internal,
              "modality '" + m.name() + "' is not aligned to the canonical sample order");
    }
    for (ClassIndex y : labels_) {
      require(y >= 0 && static_cast<std::size_t>(y) < label_space_.size(), ErrorCode::invalid_argument,
              "label index out of range");
    }
  }

  std::size_t size() const noexcept { return sample_ids_.size(); }
  std::size_t modality_count() const noexcept { return modalities_.size(); }
  std::size_t class_count() const noexcept { return label_space_.size(); }
  const std::vector<ModalityTable>& modalities() const noexcept { return modalities_; }
  const ModalityTable& modality(std::size_t i) const { return modalities_.at(i); }
  const std::vector<ClassIndex>& labels() const noexcept { return labels_; }
  const LabelSpace& label_space() const noexcept { return label_space_; }
  const std::vector<std::string>& sample_ids() const noexcept { return sample_ids_; }

  friend bool operator==(const MultimodalDataset&, const MultimodalDataset&) = default;

 private:
  std::vector<ModalityTable> modalities_;
  std::vector<ClassIndex> labels_;
  LabelSpace label_space_;
  std::vector<std::string> sample_ids_;
};

/// Disjoint train/validation/test sample indices for one CV fold.
struct FoldSplit {
  std::size_t fold_index = 0;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  std::vector<std::size_t> test_idx;

  friend bool operator==(const FoldSplit&, const FoldSplit&) = default;
};

inline std::vector<std::size_t> class_counts(std::span<const ClassIndex> labels, std::size_t classes) {
  std::vector<std::size_t> counts(classes, 0);
  for (ClassIndex y : labels) ++counts.at(static_cast<std::size_t>(y));
  return counts;
}

inline std::vector<ClassIndex> gather_labels(std::span<const ClassIndex> labels, std::span<const std::size_t> idx) {
  std::vector<ClassIndex> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

using KindHints = std::map<std::string, FeatureKind>;

/// Reads a modality CSV: first column holds sample ids, the rest are features.
/// Empty cells and "NA" are missing. A column is numeric when every observed
/// cell parses as a number, unless `hints` says otherwise.
inline ModalityTable load_modality_csv(const std::string& path, const KindHints& hints = {}) {
  const csv::Document doc = csv::read(path);
  require(!doc.header.empty(), ErrorCode::parse, "'" + path + "' has an empty header");
  require(!doc.rows.empty(), ErrorCode::no_data_rows, "'" + path + "' has no data rows");

  const std::size_t n_features = doc.header.size() - 1;
  std::vector<std::string> names(doc.header.begin() + 1, doc.header.end());
  std::vector<FeatureKind> kinds(n_features, FeatureKind::numeric);

  for (std::size_t c = 0; c < n_features; ++c) {
    bool all_numeric = true;
    for (const auto& row : doc.rows) {
      const std::string& token = row[c + 1];
      if (!csv::is_missing_token(token) && !csv::parse_number(token)) {
        all_numeric = false;
        break;
      }
    }
    kinds[c] = all_numeric ? FeatureKind::numeric : FeatureKind::categorical;
    if (auto it = hints.find(names[c]); it != hints.end()) {
      require(it->second == FeatureKind::categorical || all_numeric, ErrorCode::parse,
              "column '" + names[c] + "' in '" + path + "' is hinted numeric but holds non-numeric tokens");
      kinds[c] = it->second;
    }
  }

  std::vector<std::string> ids;
  std::vector<Cell> cells;
  ids.reserve(doc.rows.size());
  cells.reserve(doc.rows.size() * n_features);
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    require(seen.insert(row[0]).second, ErrorCode::duplicate_sample_id,
            "'" + path + "' line " + std::to_string(doc.line_numbers[r]) + ": duplicate sample id '" + row[0] + "'");
    ids.push_back(row[0]);
    for (std::size_t c = 0; c < n_features; ++c) {
      const std::string& token = row[c + 1];
      if (csv::is_missing_token(token)) {
        cells.emplace_back(std::monostate{});
      } else if (kinds[c] == FeatureKind::numeric) {
        cells.emplace_back(*csv::parse_number(token));
      } else {
        cells.emplace_back(token);
      }
    }
  }
  return ModalityTable(std::filesystem::path(path).stem().string(), std::move(names), std::move(kinds),
                       std::move(ids), std::move(cells));
}

/// Reads an `id,label` CSV into an id -> label-name map.
inline std::map<std::string, std::string> read_labels_csv(const std::string& path) {
  const csv::Document doc = csv::read(path);
  auto col = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(doc.header.begin(), doc.header.end(), name);
    if (it == doc.header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - doc.header.begin());
  };
  const auto label_col = col("label");
  require(label_col.has_value(), ErrorCode::missing_label_column, "'" + path + "' has no 'label' column");
  const std::size_t id_col = col("id").value_or(0);
  require(!doc.rows.empty(), ErrorCode::no_data_rows, "'" + path + "' has no data rows");

  std::map<std::string, std::string> labels;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    require(!csv::is_missing_token(row[*label_col]), ErrorCode::parse,
            "'" + path + "' line " + std::to_string(doc.line_numbers[r]) + ": missing label");
    require(labels.emplace(row[id_col], row[*label_col]).second, ErrorCode::duplicate_sample_id,
            "'" + path + "': duplicate sample id '" + row[id_col] + "'");
  }
  return labels;
}

/// Intersection join: keeps ids present in every table and in `labels`, in
/// sorted id order. The label space is the sorted set of surviving labels.
inline MultimodalDataset align(const std::vector<ModalityTable>& tables,
                               const std::map<std::string, std::string>& labels) {
  require(!tables.empty(), ErrorCode::invalid_argument, "align needs at least one table");

  std::set<std::string> common(tables.front().sample_ids().begin(), tables.front().sample_ids().end());
  for (std::size_t t = 1; t < tables.size(); ++t) {
    std::set<std::string> ids(tables[t].sample_ids().begin(), tables[t].sample_ids().end());
    std::set<std::string> kept;
    std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(), std::inserter(kept, kept.end()));
    common = std::move(kept);
  }
  std::erase_if(common, [&](const std::string& id) { return !labels.contains(id); });
  require(!common.empty(), ErrorCode::empty_intersection, "no sample id is shared by all tables and the labels");

  const std::vector<std::string> canonical(common.begin(), common.end());
  std::vector<ModalityTable> aligned;
  aligned.reserve(tables.size());
  for (const auto& table : tables) {
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t r = 0; r < table.rows(); ++r) where.emplace(table.sample_ids()[r], r);
    std::vector<std::size_t> order;
    order.reserve(canonical.size());
    for (const auto& id : canonical) order.push_back(where.at(id));
    aligned.push_back(table.reorder(order));
  }

  std::set<std::string> names;
  for (const auto& id : canonical) names.insert(labels.at(id));
  LabelSpace space(std::vector<std::string>(names.begin(), names.end()));
  std::vector<ClassIndex> y;
  y.reserve(canonical.size());
  for (const auto& id : canonical) {
    const auto k = space.index_of(labels.at(id));
    require(k.has_value(), ErrorCode::internal, "label of '" + id + "' vanished from the label space");
    y.push_back(*k);
  }
  return MultimodalDataset(std::move(aligned), std::move(y), std::move(space));
}

inline MultimodalDataset align(const std::vector<ModalityTable>& tables, const std::string& labels_csv) {
  return align(tables, read_labels_csv(labels_csv));
}

inline void write_modality_csv(const ModalityTable& table, const std::string& path, const std::string& id_column = "id") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  csv::Row header{id_column};
  header.insert(header.end(), table.feature_names().begin(), table.feature_names().end());
  csv::write_record(out, header);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    csv::Row fields{table.sample_ids()[r]};
    for (const Cell& cell : table.row(r)) {
      if (is_missing(cell)) {
        fields.emplace_back();
      } else if (const auto* v = std::get_if<double>(&cell)) {
        fields.push_back(csv::format_number(*v));
      } else {
        fields.push_back(std::get<std::string>(cell));
      }
    }
    csv::write_record(out, fields);
  }
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

inline void write_labels_csv(const MultimodalDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  csv::write_record(out, {"id", "label"});
  for (std::size_t i = 0; i < ds.size(); ++i) {
    csv::write_record(out, {ds.sample_ids()[i], ds.label_space().name(ds.labels()[i])});
  }
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

/**
 * Stratified k-fold split with a stratified validation slice per fold.
 *
 * Each class is shuffled with its own stream and dealt round-robin into the k
 * test shards (classes are dealt consecutively, so shard sizes differ by at
 * most one overall and per class). From the remaining samples of each class,
 * max(1, round(val_fraction * remaining)) go to validation when
 * val_fraction > 0; the rest is training. All index lists are sorted.
 */
inline std::vector<FoldSplit> stratified_kfold(std::span<const ClassIndex> labels, std::size_t classes, std::size_t k,
                                               double val_fraction, std::uint64_t seed) {
  require(k >= 2, ErrorCode::invalid_argument, "k must be at least 2");
  require(val_fraction >= 0.0 && val_fraction < 1.0, ErrorCode::invalid_argument, "val_fraction must be in [0, 1)");

  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) members.at(static_cast<std::size_t>(labels[i])).push_back(i);
  for (std::size_t c = 0; c < classes; ++c) {
    require(members[c].size() >= k, ErrorCode::insufficient_class_count,
            "class " + std::to_string(c) + " has " + std::to_string(members[c].size()) + " samples, fewer than k=" +
                std::to_string(k));
  }

  constexpr std::uint64_t kShardStream = 0x7368617264ULL;
  constexpr std::uint64_t kValStream = 0x76616cULL;

  std::size_t position = 0;
  std::vector<std::size_t> shard(labels.size());
  for (std::size_t c = 0; c < classes; ++c) {
    Rng rng = make_rng({seed, kShardStream, c});
    for (std::size_t i : sample_without_replacement<std::size_t>(members[c], members[c].size(), rng)) {
      shard[i] = position++ % k;
    }
  }

  std::vector<FoldSplit> folds(k);
  for (std::size_t f = 0; f < k; ++f) {
    FoldSplit& split = folds[f];
    split.fold_index = f;
    for (std::size_t c = 0; c < classes; ++c) {
      std::vector<std::size_t> rest;
      for (std::size_t i : members[c]) {
        if (shard[i] == f) {
          split.test_idx.push_back(i);
        } else {
          rest.push_back(i);
        }
      }
      std::size_t n_val = 0;
      if (val_fraction > 0.0) {
        n_val = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(val_fraction * double(rest.size()))));
        require(n_val < rest.size(), ErrorCode::insufficient_class_count,
                "class " + std::to_string(c) + " is too small to fill train and validation in fold " +
                    std::to_string(f));
      }
      Rng rng = make_rng({seed, kValStream, f, c});
      auto val = sample_without_replacement<std::size_t>(rest, n_val, rng);
      std::sort(val.begin(), val.end());
      for (std::size_t i : rest) {
        if (std::binary_search(val.begin(), val.end(), i)) {
          split.val_idx.push_back(i);
        } else {
          split.train_idx.push_back(i);
        }
      }
    }
    std::sort(split.train_idx.begin(), split.train_idx.end());
    std::sort(split.val_idx.begin(), split.val_idx.end());
    std::sort(split.test_idx.begin(), split.test_idx.end());
  }
  return folds;
}

inline std::vector<FoldSplit> stratified_kfold(const MultimodalDataset& ds, std::size_t k, double val_fraction,
                                               std::uint64_t seed) {
  return stratified_kfold(ds.labels(), ds.class_count(), k, val_fraction, seed);
}

}  // namespace imbalmed
