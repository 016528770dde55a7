#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing {

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("imbalmed_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Independent enumerator: walks the full grid {1..W}^c and keeps the points
/// whose weights sum to W, then sorts them.
inline std::vector<std::vector<int>> brute_force_compositions(int classes, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(static_cast<std::size_t>(classes), 1);
  while (true) {
    int sum = 0;
    for (int v : w) sum += v;
    if (sum == total) out.push_back(w);
    std::size_t k = 0;
    while (k < w.size() && w[k] == total) w[k++] = 1;
    if (k == w.size()) break;
    ++w[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Exhaustive k-NN imputation oracle over a NaN matrix (row-major vectors).
/// Every missing cell j of a query is the mean over the k reference rows that
/// observe j with the smallest nan-Euclidean distance, ties by row index.
inline std::vector<double> oracle_impute(const std::vector<std::vector<double>>& reference, std::vector<double> query,
                                         std::size_t k, const std::vector<double>& fallback) {
  const std::size_t D = query.size();
  auto dist = [&](const std::vector<double>& a, const std::vector<double>& b, double& out) {
    long double acc = 0.0L;
    std::size_t observed = 0;
    for (std::size_t j = 0; j < D; ++j) {
      if (a[j] != a[j] || b[j] != b[j]) continue;
      acc += static_cast<long double>(a[j] - b[j]) * (a[j] - b[j]);
      ++observed;
    }
    if (observed == 0) return false;
    out = static_cast<double>(std::sqrt(static_cast<long double>(D) / observed * acc));
    return true;
  };
  const std::vector<double> original = query;
  for (std::size_t j = 0; j < D; ++j) {
    if (original[j] == original[j]) continue;
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t r = 0; r < reference.size(); ++r) {
      double d = 0.0;
      if (reference[r][j] != reference[r][j]) continue;
      if (dist(original, reference[r], d)) candidates.emplace_back(d, r);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    if (candidates.empty()) {
      query[j] = fallback[j];
      continue;
    }
    const std::size_t take = std::min(k, candidates.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) sum += reference[candidates[i].second][j];
    query[j] = sum / static_cast<double>(take);
  }
  return query;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace testing
