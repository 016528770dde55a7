#include <catch_amalgamated.hpp>

#include <set>

#include "imbalmed/balance.hpp"
#include "support.hpp"

using namespace imbalmed;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<ClassIndex> pool(const std::vector<std::size_t>& counts) {
  std::vector<ClassIndex> y;
  for (std::size_t k = 0; k < counts.size(); ++k) y.insert(y.end(), counts[k], static_cast<ClassIndex>(k));
  std::mt19937_64 rng(counts.size() * 31 + counts[0]);
  std::shuffle(y.begin(), y.end(), rng);
  return y;
}

}  // namespace

TEST_CASE("binary enumeration at r = 0.1", "[balance]") {
  const auto v = enumerate_representativeness(2, 0.1);
  REQUIRE(v.size() == 9);
  CHECK(v[0].fractions == std::vector<double>{0.1, 0.9});
  CHECK(v[4].fractions == std::vector<double>{0.5, 0.5});
  CHECK_THAT(v[8].fractions[0], WithinAbs(0.9, 1e-15));
  CHECK_THAT(v[8].fractions[1], WithinAbs(0.1, 1e-15));
  for (std::size_t j = 0; j < v.size(); ++j) CHECK(v[j].index == j);
}

TEST_CASE("ternary enumeration at r = 0.11", "[balance]") {
  const auto v = enumerate_representativeness(3, 0.11);
  REQUIRE(v.size() == 28);
  const std::vector<double> first{0.11, 0.11, 0.78};
  const std::vector<double> last{0.77, 0.11, 0.12};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK_THAT(v.front().fractions[k], WithinAbs(first[k], 1e-12));
    CHECK_THAT(v.back().fractions[k], WithinAbs(last[k], 1e-12));
  }
  CHECK(v.front().weights == std::vector<int>{1, 1, 7});
  CHECK(v.back().weights == std::vector<int>{7, 1, 1});
}

TEST_CASE("degenerate and invalid enumerations", "[balance]") {
  const auto half = enumerate_representativeness(2, 0.5);
  REQUIRE(half.size() == 1);
  CHECK(half[0].fractions == std::vector<double>{0.5, 0.5});

  const auto third = enumerate_representativeness(3, 0.34);
  REQUIRE(third.size() == 1);
  CHECK(third[0].weights == std::vector<int>{1, 1, 1});

  CHECK_THROWS_AS(enumerate_representativeness(3, 0.5), Error);
  CHECK_THROWS_AS(enumerate_representativeness(2, 0.0), Error);
  CHECK_THROWS_AS(enumerate_representativeness(2, 1.0), Error);
  CHECK_THROWS_AS(enumerate_representativeness(1, 0.1), Error);
  CHECK(representativeness_count(3, 0.5) == 0);
}

TEST_CASE("enumeration equals the brute-force grid and sums to one", "[balance][oracle]") {
  for (int c : {2, 3, 4}) {
    for (double r : {0.05, 0.1, 0.11, 0.2, 0.25}) {
      const int W = static_cast<int>(std::lround(1.0 / r));
      const auto v = enumerate_representativeness(static_cast<std::size_t>(c), r);
      const auto oracle = testing::brute_force_compositions(c, W);
      std::vector<std::vector<int>> got;
      for (const auto& x : v) got.push_back(x.weights);
      CHECK(got == oracle);
      CHECK(v.size() == representativeness_count(static_cast<std::size_t>(c), r));
      for (const auto& x : v) {
        double sum = 0.0;
        for (double b : x.fractions) sum += b;
        CHECK(sum == 1.0);
        CHECK(*std::min_element(x.fractions.begin(), x.fractions.end()) >= r - 1e-12);
      }
    }
  }
}

TEST_CASE("subset class counts follow max(1, round(b * n_min))", "[balance]") {
  const std::vector<std::size_t> binary{100, 300};
  CHECK(subset_class_counts(binary, std::vector<double>{0.3, 0.7}) == std::vector<std::size_t>{30, 70});
  CHECK(subset_class_counts(binary, std::vector<double>{0.5, 0.5}) == std::vector<std::size_t>{50, 50});

  // Derived with exact decimal arithmetic for all 28 vectors of (3, 0.11) on a 9/50/50 pool.
  const std::vector<std::vector<std::size_t>> expected{
      {1, 1, 7}, {1, 2, 6}, {1, 3, 5}, {1, 4, 4}, {1, 5, 3}, {1, 6, 2}, {1, 7, 1}, {2, 1, 6}, {2, 2, 5}, {2, 3, 4},
      {2, 4, 3}, {2, 5, 2}, {2, 6, 1}, {3, 1, 5}, {3, 2, 4}, {3, 3, 3}, {3, 4, 2}, {3, 5, 1}, {4, 1, 4}, {4, 2, 3},
      {4, 3, 2}, {4, 4, 1}, {5, 1, 3}, {5, 2, 2}, {5, 3, 1}, {6, 1, 2}, {6, 2, 1}, {7, 1, 1}};
  const auto specs = enumerate_representativeness(3, 0.11);
  const auto labels = pool({9, 50, 50});
  for (std::size_t j = 0; j < specs.size(); ++j) {
    const auto subset = build_subset(labels, specs[j], 1);
    CHECK(subset.per_class_counts == expected[j]);
  }
}

TEST_CASE("subsets sample without replacement and are seed-deterministic", "[balance][property]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t c = 2 + rng() % 2;
    std::vector<std::size_t> counts(c);
    for (auto& n : counts) n = 5 + rng() % 200;
    const auto labels = pool(counts);
    const double r = c == 2 ? 0.1 : 0.11;
    const auto specs = enumerate_representativeness(c, r);
    const auto& spec = specs[rng() % specs.size()];
    const std::uint64_t seed = rng();

    const auto subset = build_subset(labels, spec, seed);
    const std::size_t n_min = *std::min_element(counts.begin(), counts.end());
    std::vector<std::size_t> seen(c, 0);
    for (std::size_t i : subset.indices) ++seen[static_cast<std::size_t>(labels[i])];
    CHECK(seen == subset.per_class_counts);
    CHECK(std::adjacent_find(subset.indices.begin(), subset.indices.end()) == subset.indices.end());
    CHECK(std::is_sorted(subset.indices.begin(), subset.indices.end()));

    std::size_t total = 0;
    for (std::size_t k = 0; k < c; ++k) {
      const auto want = std::max<long>(1, std::lround(spec.fractions[k] * static_cast<double>(n_min)));
      CHECK(subset.per_class_counts[k] == static_cast<std::size_t>(want));
      CHECK(subset.per_class_counts[k] <= counts[k]);
      total += subset.per_class_counts[k];
    }
    CHECK(total + c >= n_min);
    CHECK(total <= n_min + c);

    CHECK(build_subset(labels, spec, seed) == subset);
    const auto other = build_subset(labels, spec, seed + 1);
    CHECK(other.per_class_counts == subset.per_class_counts);
  }
}

TEST_CASE("build_all_subsets covers every spec", "[balance]") {
  const auto labels = pool({40, 160});
  const auto all = build_all_subsets(labels, 2, 0.1, 5);
  REQUIRE(all.size() == 9);
  std::set<std::vector<double>> specs;
  for (const auto& s : all) specs.insert(s.spec.fractions);
  CHECK(specs.size() == 9);
  CHECK(build_all_subsets(labels, 2, 0.1, 5) == all);
  CHECK(build_all_subsets(pool({30, 30, 30}), 3, 0.34, 5).size() == 1);

  std::vector<ClassIndex> missing_class(20, 0);
  try {
    build_all_subsets(missing_class, 2, 0.1, 5);
    FAIL();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_class);
  }
}
