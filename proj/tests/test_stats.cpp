#include <catch_amalgamated.hpp>

#include <random>

#include "imbalmed/experiment.hpp"
#include "imbalmed/stats.hpp"
#include "t_reference_data.hpp"

using namespace imbalmed;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Student t CDF matches reference values", "[stats][oracle]") {
  for (const auto& point : reference::kStudentTCdf) {
    INFO("df=" << point.df << " t=" << point.t);
    CHECK_THAT(stats::student_t_cdf(point.t, point.df), WithinAbs(point.cdf, 1e-6));
  }
  CHECK(stats::student_t_cdf(std::numeric_limits<double>::infinity(), 3) == 1.0);
  CHECK_THROWS_AS(stats::student_t_cdf(1.0, 0.0), Error);
}

TEST_CASE("paired t-test matches reference statistics", "[stats][oracle]") {
  for (std::size_t i = 0; i < reference::kPairedCases.size(); ++i) {
    const auto& c = reference::kPairedCases[i];
    INFO("case " << i);
    const auto res = stats::paired_t_test(c.a, c.b);
    CHECK(res.df == c.a.size() - 1);
    CHECK_THAT(res.t, WithinRel(c.t, 1e-9));
    CHECK_THAT(res.p, WithinAbs(c.p, 1e-6));
  }
}

TEST_CASE("paired t-test on differences 2, 1, 3, 2.5, 1.5", "[stats]") {
  const std::vector<double> a{2.0, 1.0, 3.0, 2.5, 1.5};
  const std::vector<double> b(5, 0.0);
  const auto res = stats::paired_t_test(a, b);
  // mean 2, sample sd sqrt(0.625), t = 2 / (sqrt(0.625) / sqrt(5))
  CHECK_THAT(res.t, WithinRel(5.65685424949238, 1e-12));
  CHECK_THAT(res.p, WithinAbs(0.004812678330044227, 1e-9));
  CHECK(res.df == 4);
}

TEST_CASE("paired t-test degenerate cases", "[stats]") {
  const std::vector<double> a{70.0, 80.0, 90.0};
  const auto same = stats::paired_t_test(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);

  const std::vector<double> shifted{71.0, 81.0, 91.0};
  const auto up = stats::paired_t_test(shifted, a);
  CHECK(std::isinf(up.t));
  CHECK(up.t > 0);
  CHECK(up.p == 0.0);
  CHECK(stats::paired_t_test(a, shifted).t < 0);

  CHECK_THROWS_AS(stats::paired_t_test(std::vector<double>{1.0}, std::vector<double>{2.0}), Error);
  CHECK_THROWS_AS(stats::paired_t_test(a, std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("swapping the samples negates t and keeps p", "[stats][property]") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(80.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng() % 20;
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    const auto ab = stats::paired_t_test(a, b);
    const auto ba = stats::paired_t_test(b, a);
    CHECK_THAT(ba.t, WithinAbs(-ab.t, 1e-9 * (1.0 + std::fabs(ab.t))));
    CHECK_THAT(ba.p, WithinAbs(ab.p, 1e-12));
    CHECK(ab.p >= 0.0);
    CHECK(ab.p <= 1.0);
  }
}

TEST_CASE("win/tie/loss percentages", "[stats]") {
  std::vector<double> a(10, 90.0), b(10, 80.0);
  b[3] = 95.0;
  const auto wtl = stats::win_tie_loss(a, b);
  CHECK(wtl.win == 90.0);
  CHECK(wtl.tie == 0.0);
  CHECK(wtl.loss == 10.0);

  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{1.0 + 5e-10, 1.0, 3.5, 4.0};
  const auto mixed = stats::win_tie_loss(x, y);
  CHECK(mixed.win == 25.0);
  CHECK(mixed.tie == 50.0);
  CHECK(mixed.loss == 25.0);
  CHECK_THROWS_AS(stats::win_tie_loss(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST_CASE("comparison annotation", "[stats]") {
  CHECK(annotate({90.0, 0.0, 10.0}, 0.01) == "W*");
  CHECK(annotate({90.0, 0.0, 10.0}, 0.2) == "W");
  CHECK(annotate({20.0, 10.0, 70.0}, 0.05) == "L*");
  CHECK(annotate({40.0, 20.0, 40.0}, 0.001) == "T");
  CHECK(annotate({0.0, 100.0, 0.0}, 1.0) == "T");
}
