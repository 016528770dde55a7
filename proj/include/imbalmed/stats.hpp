#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "imbalmed/error.hpp"

namespace imbalmed::stats {

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw Error(ErrorCode::internal, "incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, ErrorCode::invalid_argument, "incomplete beta needs a, b > 0");
  require(x >= 0.0 && x <= 1.0, ErrorCode::invalid_argument, "incomplete beta needs 0 <= x <= 1");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(T <= t) for Student's t with `df` degrees of freedom.
inline double student_t_cdf(double t, double df) {
  require(df > 0.0, ErrorCode::invalid_argument, "degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

/// Two-sided P(|T| >= |t|).
inline double student_t_two_sided_p(double t, double df) {
  require(df > 0.0, ErrorCode::invalid_argument, "degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  std::size_t df = 0;
};

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
inline double sample_std(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/**
 * Paired t-test on a - b with k - 1 degrees of freedom.
 *
 * When every difference is identical the statistic is undefined: t = 0,
 * p = 1 if the common difference is 0; otherwise t = +/-inf and p = 0.
 */
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::dimension_mismatch, "paired samples differ in length");
  require(a.size() >= 2, ErrorCode::invalid_argument, "paired t-test needs at least 2 pairs");
  const std::size_t k = a.size();
  std::vector<double> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = a[i] - b[i];

  TTestResult result;
  result.df = k - 1;
  const double md = mean(d);
  const double sd = sample_std(d);
  if (sd == 0.0) {
    if (md == 0.0) return result;
    result.t = md > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    result.p = 0.0;
    return result;
  }
  result.t = md / (sd / std::sqrt(static_cast<double>(k)));
  result.p = student_t_two_sided_p(result.t, static_cast<double>(result.df));
  return result;
}

struct WinTieLoss {
  double win = 0.0;  // percentages over the paired folds
  double tie = 0.0;
  double loss = 0.0;
};

/// Per-pair comparison; |a - b| <= epsilon counts as a tie.
inline WinTieLoss win_tie_loss(std::span<const double> a, std::span<const double> b, double epsilon = 1e-9) {
  require(a.size() == b.size(), ErrorCode::dimension_mismatch, "paired samples differ in length");
  require(!a.empty(), ErrorCode::invalid_argument, "win/tie/loss needs at least one pair");
  std::size_t win = 0, tie = 0, loss = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) <= epsilon) {
      ++tie;
    } else if (a[i] > b[i]) {
      ++win;
    } else {
      ++loss;
    }
  }
  const double n = static_cast<double>(a.size());
  return {100.0 * static_cast<double>(win) / n, 100.0 * static_cast<double>(tie) / n,
          100.0 * static_cast<double>(loss) / n};
}

}  // namespace imbalmed::stats
