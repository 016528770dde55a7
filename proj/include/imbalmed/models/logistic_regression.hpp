#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "imbalmed/classifier.hpp"

namespace imbalmed {

/// Multinomial logistic regression trained by full-batch gradient descent.
/// Parameters are a c x (a+1) row-major matrix; the last column is the bias,
/// which is not penalized.
class LogisticRegression final : public Classifier {
 public:
  explicit LogisticRegression(ClassifierSpec spec) : Classifier(std::move(spec)) {}

  /// Mean cross-entropy plus (l2/2) * ||W||^2 over non-bias weights.
  static double objective(const Matrix& params, const Matrix& X, std::span<const ClassIndex> y, double l2) {
    const std::size_t c = params.rows();
    const std::size_t a = X.cols();
    std::vector<double> z(c);
    double loss = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) {
      scores(params, X.row(i), z);
      const double top = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double v : z) sum += std::exp(v - top);
      loss += top + std::log(sum) - z[static_cast<std::size_t>(y[i])];
    }
    loss /= static_cast<double>(X.rows());
    double penalty = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t j = 0; j < a; ++j) penalty += params(k, j) * params(k, j);
    }
    return loss + 0.5 * l2 * penalty;
  }

  static Matrix gradient(const Matrix& params, const Matrix& X, std::span<const ClassIndex> y, double l2) {
    const std::size_t c = params.rows();
    const std::size_t a = X.cols();
    Matrix grad(c, a + 1);
    std::vector<double> p(c);
    for (std::size_t i = 0; i < X.rows(); ++i) {
      auto x = X.row(i);
      scores(params, x, p);
      softmax_inplace(p);
      p[static_cast<std::size_t>(y[i])] -= 1.0;
      for (std::size_t k = 0; k < c; ++k) {
        for (std::size_t j = 0; j < a; ++j) grad(k, j) += p[k] * x[j];
        grad(k, a) += p[k];
      }
    }
    const double inv_n = 1.0 / static_cast<double>(X.rows());
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t j = 0; j <= a; ++j) grad(k, j) *= inv_n;
      for (std::size_t j = 0; j < a; ++j) grad(k, j) += l2 * params(k, j);
    }
    return grad;
  }

  const Matrix& parameters() const noexcept { return params_; }

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    const double l2 = spec().param("l2");
    const double rate = spec().param("learning_rate");
    const auto iterations = static_cast<std::size_t>(spec().param("iterations"));
    params_ = Matrix(classes(), X.cols() + 1);
    for (std::size_t it = 0; it < iterations; ++it) {
      const Matrix grad = gradient(params_, X, y, l2);
      for (std::size_t k = 0; k < params_.rows(); ++k) {
        for (std::size_t j = 0; j < params_.cols(); ++j) params_(k, j) -= rate * grad(k, j);
      }
    }
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    scores(params_, x, out);
    softmax_inplace(out);
  }

  nlohmann::json state_json() const override {
    return {{"rows", params_.rows()},
            {"cols", params_.cols()},
            {"values", std::vector<double>(params_.data().begin(), params_.data().end())}};
  }

  void load_state(const nlohmann::json& j) override {
    params_ = Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto values = j.at("values").get<std::vector<double>>();
    require(values.size() == params_.rows() * params_.cols(), ErrorCode::parse, "logistic parameters truncated");
    for (std::size_t i = 0; i < values.size(); ++i) params_(i / params_.cols(), i % params_.cols()) = values[i];
  }

 private:
  static void scores(const Matrix& params, std::span<const double> x, std::span<double> z) {
    const std::size_t a = x.size();
    for (std::size_t k = 0; k < params.rows(); ++k) {
      double s = params(k, a);
      for (std::size_t j = 0; j < a; ++j) s += params(k, j) * x[j];
      z[k] = s;
    }
  }

  Matrix params_;
};

}  // namespace imbalmed
