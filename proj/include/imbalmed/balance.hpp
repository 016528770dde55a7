#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "imbalmed/csv.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/random.hpp"

namespace imbalmed {

/**
 * Class composition of one balanced subset.
 *
 * weights are positive integers summing to W = round(1/r). The first c-1
 * fractions are weight * r and the last class takes the complement to 1, so
 * for r = 0.11 the first vector is [0.11, 0.11, 0.78].
 */
struct RepresentativenessVector {
  std::size_t index = 0;  // 0-based position in the enumeration
  double r = 0.0;
  std::vector<int> weights;
  std::vector<double> fractions;

  friend bool operator==(const RepresentativenessVector&, const RepresentativenessVector&) = default;
};

/// W = round(1/r): number of r-sized steps that make up a whole subset.
inline int representativeness_steps(double r) {
  require(r > 0.0 && r < 1.0, ErrorCode::invalid_argument, "r must lie strictly between 0 and 1");
  return static_cast<int>(std::lround(1.0 / r));
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

/// Number of vectors enumerate_representativeness(c, r) yields: C(W-1, c-1).
inline std::uint64_t representativeness_count(std::size_t classes, double r) {
  const int steps = representativeness_steps(r);
  if (steps < static_cast<int>(classes)) return 0;
  return binomial(static_cast<std::uint64_t>(steps - 1), classes - 1);
}

inline std::vector<double> fractions_from_weights(std::span<const int> weights, double r) {
  std::vector<double> fractions(weights.size());
  double head = 0.0;
  for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
    fractions[k] = weights[k] * r;
    head += fractions[k];
  }
  fractions.back() = 1.0 - head;
  return fractions;
}

/// All compositions of W into c positive weights, lexicographically ascending.
inline std::vector<RepresentativenessVector> enumerate_representativeness(std::size_t classes, double r) {
  require(classes >= 2, ErrorCode::invalid_argument, "need at least 2 classes");
  const int steps = representativeness_steps(r);
  require(steps >= static_cast<int>(classes), ErrorCode::invalid_argument,
          "r=" + csv::format_number(r) + " leaves room for only " + std::to_string(steps) + " steps, fewer than " +
              std::to_string(classes) + " classes");

  std::vector<RepresentativenessVector> out;
  out.reserve(representativeness_count(classes, r));
  std::vector<int> weights(classes, 0);

  std::function<void(std::size_t, int)> place = [&](std::size_t k, int remaining) {
    if (k + 1 == classes) {
      weights[k] = remaining;
      RepresentativenessVector v;
      v.index = out.size();
      v.r = r;
      v.weights = weights;
      v.fractions = fractions_from_weights(weights, r);
      out.push_back(std::move(v));
      return;
    }
    const int slots_after = static_cast<int>(classes - k - 1);
    for (int w = 1; w <= remaining - slots_after; ++w) {
      weights[k] = w;
      place(k + 1, remaining - w);
    }
  };
  place(0, steps);
  return out;
}

/// Sample indices (into the pool the labels describe) realizing one vector.
struct BalancedSubset {
  RepresentativenessVector spec;
  std::vector<std::size_t> indices;  // sorted ascending
  std::vector<std::size_t> per_class_counts;
  std::uint64_t seed = 0;

  friend bool operator==(const BalancedSubset&, const BalancedSubset&) = default;
};

/// max(1, round(fraction * n_min)) per class, n_min being the rarest class size.
inline std::vector<std::size_t> subset_class_counts(std::span<const std::size_t> pool_counts,
                                                    std::span<const double> fractions) {
  require(pool_counts.size() == fractions.size(), ErrorCode::dimension_mismatch,
          "class count and fraction vector differ in length");
  const std::size_t n_min = *std::min_element(pool_counts.begin(), pool_counts.end());
  std::vector<std::size_t> counts(fractions.size());
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const long rounded = std::lround(fractions[k] * static_cast<double>(n_min));
    counts[k] = std::min(pool_counts[k], static_cast<std::size_t>(std::max(1L, rounded)));
  }
  return counts;
}

inline constexpr std::uint64_t kSubsetStream = 0x737562736574ULL;

/// Undersamples each class without replacement from a stream keyed by
/// (seed, spec.index, class).
inline BalancedSubset build_subset(std::span<const ClassIndex> labels, const RepresentativenessVector& spec,
                                   std::uint64_t seed) {
  const std::size_t classes = spec.fractions.size();
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto y = static_cast<std::size_t>(labels[i]);
    require(y < classes, ErrorCode::invalid_argument, "label outside the representativeness vector's classes");
    members[y].push_back(i);
  }
  std::vector<std::size_t> pool_counts(classes);
  for (std::size_t k = 0; k < classes; ++k) {
    require(!members[k].empty(), ErrorCode::empty_class, "class " + std::to_string(k) + " is absent from the pool");
    pool_counts[k] = members[k].size();
  }

  BalancedSubset subset;
  subset.spec = spec;
  subset.seed = seed;
  subset.per_class_counts = subset_class_counts(pool_counts, spec.fractions);
  for (std::size_t k = 0; k < classes; ++k) {
    Rng rng = make_rng({seed, kSubsetStream, spec.index, k});
    auto drawn = sample_without_replacement<std::size_t>(members[k], subset.per_class_counts[k], rng);
    subset.indices.insert(subset.indices.end(), drawn.begin(), drawn.end());
  }
  std::sort(subset.indices.begin(), subset.indices.end());
  return subset;
}

inline std::vector<BalancedSubset> build_all_subsets(std::span<const ClassIndex> labels, std::size_t classes, double r,
                                                     std::uint64_t seed) {
  std::vector<BalancedSubset> subsets;
  for (const auto& spec : enumerate_representativeness(classes, r)) subsets.push_back(build_subset(labels, spec, seed));
  return subsets;
}

}  // namespace imbalmed
