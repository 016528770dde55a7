#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace imbalmed {

using Rng = std::mt19937_64;

// Independent stream per key tuple, e.g. (seed, subset index, class).
// std::seed_seq's mixing is fully specified, so streams are stable across builds.
inline Rng make_rng(std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> words;
  words.reserve(keys.size() * 2);
  for (std::uint64_t k : keys) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Draws `count` distinct elements of `pool` uniformly (partial Fisher-Yates).
template <typename T>
std::vector<T> sample_without_replacement(std::span<const T> pool, std::size_t count, Rng& rng) {
  std::vector<T> work(pool.begin(), pool.end());
  if (count > work.size()) count = work.size();
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, work.size() - 1);
    std::swap(work[i], work[pick(rng)]);
  }
  work.resize(count);
  return work;
}

}  // namespace imbalmed
