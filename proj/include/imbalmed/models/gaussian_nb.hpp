#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "imbalmed/classifier.hpp"

namespace imbalmed {

// Per-class diagonal Gaussians with empirical priors. Variances are the
// population variance, floored at var_floor.
class GaussianNaiveBayes final : public Classifier {
 public:
  explicit GaussianNaiveBayes(ClassifierSpec spec) : Classifier(std::move(spec)) {}

  const std::vector<double>& priors() const noexcept { return priors_; }
  const Matrix& means() const noexcept { return means_; }
  const Matrix& variances() const noexcept { return vars_; }

 protected:
  void do_fit(const Matrix& X, std::span<const ClassIndex> y) override {
    const std::size_t c = classes();
    const std::size_t a = X.cols();
    const auto counts = class_counts(y, c);
    for (std::size_t k = 0; k < c; ++k) {
      require(counts[k] > 0, ErrorCode::empty_class, "gaussian_nb: class " + std::to_string(k) + " has no samples");
    }
    priors_.assign(c, 0.0);
    means_ = Matrix(c, a);
    vars_ = Matrix(c, a);
    for (std::size_t i = 0; i < X.rows(); ++i) {
      const auto k = static_cast<std::size_t>(y[i]);
      for (std::size_t j = 0; j < a; ++j) means_(k, j) += X(i, j);
    }
    for (std::size_t k = 0; k < c; ++k) {
      priors_[k] = static_cast<double>(counts[k]) / static_cast<double>(X.rows());
      for (std::size_t j = 0; j < a; ++j) means_(k, j) /= static_cast<double>(counts[k]);
    }
    for (std::size_t i = 0; i < X.rows(); ++i) {
      const auto k = static_cast<std::size_t>(y[i]);
      for (std::size_t j = 0; j < a; ++j) {
        const double d = X(i, j) - means_(k, j);
        vars_(k, j) += d * d;
      }
    }
    const double floor = spec().param("var_floor");
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t j = 0; j < a; ++j) {
        vars_(k, j) = std::max(vars_(k, j) / static_cast<double>(counts[k]), floor);
      }
    }
  }

  void raw_proba(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t k = 0; k < out.size(); ++k) {
      double log_joint = std::log(priors_[k]);
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - means_(k, j);
        log_joint -= 0.5 * (std::log(2.0 * std::numbers::pi * vars_(k, j)) + d * d / vars_(k, j));
      }
      out[k] = log_joint;
    }
    softmax_inplace(out);
  }

  nlohmann::json state_json() const override {
    auto flat = [](const Matrix& m) { return std::vector<double>(m.data().begin(), m.data().end()); };
    return {{"priors", priors_}, {"means", flat(means_)}, {"vars", flat(vars_)}};
  }

  void load_state(const nlohmann::json& j) override {
    priors_ = j.at("priors").get<std::vector<double>>();
    auto unflat = [&](const std::vector<double>& v) {
      Matrix m(classes(), features());
      require(v.size() == classes() * features(), ErrorCode::parse, "gaussian_nb state truncated");
      for (std::size_t i = 0; i < v.size(); ++i) m(i / features(), i % features()) = v[i];
      return m;
    };
    means_ = unflat(j.at("means").get<std::vector<double>>());
    vars_ = unflat(j.at("vars").get<std::vector<double>>());
  }

 private:
  std::vector<double> priors_;
  Matrix means_;
  Matrix vars_;
};

}  // namespace imbalmed
