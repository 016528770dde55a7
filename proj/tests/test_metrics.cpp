#include <catch_amalgamated.hpp>

#include <random>

#include "imbalmed/metrics.hpp"

using namespace imbalmed;
using Catch::Matchers::WithinAbs;

TEST_CASE("binary G-mean from recall 0.8 and specificity 0.5", "[metrics]") {
  // class 1 is the positive class: recall 8/10, specificity 5/10
  const auto cm = ConfusionMatrix::from_counts({{5, 5}, {2, 8}});
  CHECK(cm.recall(1) == 0.8);
  CHECK(cm.specificity(1) == 0.5);
  CHECK_THAT(gmean(cm), WithinAbs(0.632456, 1e-6));
  CHECK_THAT(gmean(cm, GMeanVariant::paper_literal), WithinAbs(0.4, 1e-12));
}

TEST_CASE("from_predictions counts truth rows and predicted columns", "[metrics]") {
  const std::vector<ClassIndex> truth{0, 0, 1, 2, 2, 2};
  const std::vector<ClassIndex> pred{0, 1, 1, 2, 0, 2};
  const auto cm = ConfusionMatrix::from_predictions(truth, pred, 3);
  CHECK(cm.to_rows() == std::vector<std::vector<std::int64_t>>{{1, 1, 0}, {0, 1, 0}, {1, 0, 2}});
  CHECK(cm.total() == 6);
  CHECK_THAT(gmean(cm), WithinAbs(std::cbrt(0.5 * 1.0 * 2.0 / 3.0), 1e-12));
  CHECK_THROWS_AS(ConfusionMatrix::from_predictions(truth, std::vector<ClassIndex>{0}, 3), Error);
}

TEST_CASE("perfect, degenerate and empty confusion matrices", "[metrics]") {
  const auto perfect = ConfusionMatrix::from_counts({{4, 0, 0}, {0, 3, 0}, {0, 0, 9}});
  CHECK(gmean(perfect) == 1.0);
  CHECK(gmean(perfect, GMeanVariant::paper_literal) == 1.0);

  // every sample predicted as class 0: one recall is zero
  const auto majority = ConfusionMatrix::from_counts({{90, 0}, {10, 0}});
  CHECK(gmean(majority) == 0.0);
  CHECK(gmean(majority, GMeanVariant::paper_literal) == 0.0);

  // a class absent from the truth has recall 0 and drives G-mean to 0
  const auto absent = ConfusionMatrix::from_counts({{5, 0}, {0, 0}});
  CHECK(absent.recall(1) == 0.0);
  CHECK(absent.specificity(0) == 0.0);
  CHECK(gmean(absent) == 0.0);

  CHECK_THROWS_AS(gmean(ConfusionMatrix(2)), Error);
  CHECK_THROWS_AS(ConfusionMatrix::from_counts({{1, 2}, {3}}), Error);
  CHECK_THROWS_AS(ConfusionMatrix::from_counts({{1, -2}, {3, 4}}), Error);
}

TEST_CASE("metric names parse in both spellings", "[metrics]") {
  CHECK(parse_variant("recall-geomean") == GMeanVariant::recall_geomean);
  CHECK(parse_variant("paper_literal") == GMeanVariant::paper_literal);
  CHECK(variant_name(GMeanVariant::paper_literal) == "paper-literal");
  CHECK_THROWS_AS(parse_variant("f1"), Error);
}

TEST_CASE("G-mean is invariant under relabeling classes", "[metrics][property]") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> count(0, 30);
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::vector<std::int64_t>> rows(4, std::vector<std::int64_t>(4));
    for (auto& row : rows) {
      for (auto& v : row) v = count(rng);
    }
    std::vector<std::vector<std::int64_t>> permuted(4, std::vector<std::int64_t>(4));
    for (std::size_t t = 0; t < 4; ++t) {
      for (std::size_t p = 0; p < 4; ++p) permuted[perm[t]][perm[p]] = rows[t][p];
    }
    const auto a = ConfusionMatrix::from_counts(rows);
    const auto b = ConfusionMatrix::from_counts(permuted);
    for (auto v : {GMeanVariant::recall_geomean, GMeanVariant::paper_literal}) {
      const double ga = gmean(a, v);
      CHECK_THAT(gmean(b, v), WithinAbs(ga, 1e-12));
      CHECK(ga >= 0.0);
      CHECK(ga <= 1.0);
    }
  }
}

TEST_CASE("binary recall G-mean is sqrt(recall * specificity)", "[metrics][property]") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::int64_t> count(0, 1000);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::int64_t tn = count(rng), fp = count(rng), fn = count(rng), tp = count(rng);
    if (tn + fp == 0 || tp + fn == 0) continue;
    const auto cm = ConfusionMatrix::from_counts({{tn, fp}, {fn, tp}});
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double spec = static_cast<double>(tn) / static_cast<double>(tn + fp);
    const double g = gmean(cm);
    CHECK_THAT(g, WithinAbs(std::sqrt(recall * spec), 1e-12));
    // with two classes the literal product counts each rate twice
    CHECK_THAT(gmean(cm, GMeanVariant::paper_literal), WithinAbs(g * g, 1e-12));
  }
}
