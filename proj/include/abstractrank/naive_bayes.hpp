#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "logreg.hpp"
#include "vectorize.hpp"

namespace abstractrank {

/// Multinomial Naive Bayes with additive (Lidstone) smoothing.
struct NaiveBayesModel {
  std::vector<int> classes;
  std::vector<double> log_prior;
  DenseMatrix log_likelihood;  // n_classes x n_features
  double alpha = 1.0;

  std::size_t n_features() const { return log_likelihood.cols(); }
};

struct NaiveBayesOptions {
  double alpha = 1.0;
  // Accept non-integer features (e.g. TF-IDF weights) as pseudo-counts.
  bool allow_pseudo_counts = false;
};

/// log_prior_c = ln(n_c / n);
/// log_likelihood_{c,t} = ln((count(t,c) + alpha) / (sum_t count(t,c) + alpha |V|)).
inline NaiveBayesModel train_nb(std::span<const SparseVector> x, std::span<const int> y, std::size_t n_features,
                                double alpha = 1.0) {
  detail::check_training_inputs(x, y, n_features);
  if (!(alpha > 0.0)) detail::fail(Errc::InvalidArgument, "alpha must be positive");
  NaiveBayesModel m;
  m.alpha = alpha;
  m.classes = detail::distinct_classes(y);
  if (m.classes.size() < 2) detail::fail(Errc::SingleClass, "class " + std::to_string(m.classes.front()));
  const auto y_idx = detail::class_indices(y, m.classes);
  const std::size_t c = m.classes.size();

  DenseMatrix counts(c, n_features);
  std::vector<double> docs(c, 0.0), totals(c, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    docs[y_idx[i]] += 1.0;
    for (const auto& e : x[i].entries) {
      if (e.value < 0.0) detail::fail(Errc::InvalidArgument, "negative feature count");
      counts(y_idx[i], e.index) += e.value;
      totals[y_idx[i]] += e.value;
    }
  }
  m.log_prior.resize(c);
  m.log_likelihood = DenseMatrix(c, n_features);
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < c; ++k) {
    m.log_prior[k] = std::log(docs[k] / n);
    // ln of the rounded quotient: equal smoothed ratios in different classes
    // stay bitwise equal, so the smallest-class tie rule holds.
    const double denom = totals[k] + alpha * static_cast<double>(n_features);
    for (std::size_t t = 0; t < n_features; ++t) m.log_likelihood(k, t) = std::log((counts(k, t) + alpha) / denom);
  }
  return m;
}

inline NaiveBayesModel train_nb(const DocTermMatrix& x, std::span<const int> y, NaiveBayesOptions opts = {}) {
  if (x.weighting != Weighting::Count && !opts.allow_pseudo_counts)
    detail::fail(Errc::InvalidArgument, "Naive Bayes expects counts; enable pseudo-count mode for TF-IDF input");
  return train_nb(x.rows, y, x.n_cols(), opts.alpha);
}

/// log_prior_c + sum_t tf_t * log_likelihood_{c,t}, in class order.
inline std::vector<double> nb_joint_log_likelihood(const NaiveBayesModel& m, const SparseVector& x) {
  if (x.dim != m.n_features())
    detail::fail(Errc::DimensionMismatch,
                 "feature dim " + std::to_string(x.dim) + " vs model " + std::to_string(m.n_features()));
  std::vector<double> scores(m.log_prior);
  for (std::size_t k = 0; k < scores.size(); ++k) scores[k] += x.dot(m.log_likelihood.row(k));
  return scores;
}

inline int predict_nb(const NaiveBayesModel& m, const SparseVector& x) {
  return m.classes[detail::argmax_first(nb_joint_log_likelihood(m, x))];
}

}  // namespace abstractrank
