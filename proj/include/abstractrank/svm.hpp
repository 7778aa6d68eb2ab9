#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "logreg.hpp"
#include "random.hpp"
#include "vectorize.hpp"

namespace abstractrank {

struct SvmHyper {
  double lambda = 1e-4;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;
};

/// One-vs-rest linear SVM; row c of `weights` separates `classes[c]` from
/// the rest.
struct SvmModel {
  std::vector<int> classes;
  DenseMatrix weights;
  std::vector<double> bias;
  SvmHyper hyper;

  std::size_t n_features() const { return weights.cols(); }
};

/// (lambda/2)||w||^2 + mean_i max(0, 1 - y_i (w.x_i + b)) with y_i in {-1, +1}.
inline double pegasos_objective(std::span<const double> w, double b, std::span<const SparseVector> x,
                                std::span<const int> y_pm, double lambda) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    hinge += std::max(0.0, 1.0 - static_cast<double>(y_pm[i]) * (x[i].dot(w) + b));
  return 0.5 * lambda * dot(w, w) + hinge / static_cast<double>(x.size());
}

namespace detail {

// Pegasos: at step t (1-based) with eta = 1/(lambda t),
//   w <- (1 - eta lambda) w [+ eta y x  if y (w.x + b) < 1].
// The bias is handled as the weight of a constant feature, so it shrinks
// with w. Samples are visited in a seeded shuffle per epoch; w is stored as
// scale * v so each step costs O(nnz(x)).
inline void pegasos_binary(std::span<const SparseVector> x, std::span<const int> y_pm, const SvmHyper& hyper,
                           std::uint64_t seed, std::span<double> w_out, double& b_out) {
  const std::size_t f = w_out.size();
  std::vector<double> v(f, 0.0);
  double vb = 0.0, scale = 1.0;
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const auto i : order) {
      ++t;
      const double eta = 1.0 / (hyper.lambda * static_cast<double>(t));
      const double margin = static_cast<double>(y_pm[i]) * scale * (x[i].dot(v) + vb);
      const double shrink = 1.0 - eta * hyper.lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * static_cast<double>(y_pm[i]) / scale;
        for (const auto& e : x[i].entries) v[e.index] += step * e.value;
        vb += step;
      }
      if (scale < 1e-9) {
        for (auto& vi : v) vi *= scale;
        vb *= scale;
        scale = 1.0;
      }
    }
  }
  for (std::size_t j = 0; j < f; ++j) w_out[j] = scale * v[j];
  b_out = scale * vb;
}

}  // namespace detail

inline SvmModel train_svm_ovr(std::span<const SparseVector> x, std::span<const int> y, std::size_t n_features,
                              const SvmHyper& hyper = {}) {
  detail::check_training_inputs(x, y, n_features);
  if (!(hyper.lambda > 0.0)) detail::fail(Errc::InvalidArgument, "lambda must be positive");
  SvmModel m;
  m.classes = detail::distinct_classes(y);
  if (m.classes.size() < 2) detail::fail(Errc::SingleClass, "class " + std::to_string(m.classes.front()));
  m.hyper = hyper;
  m.weights = DenseMatrix(m.classes.size(), n_features);
  m.bias.assign(m.classes.size(), 0.0);
  std::vector<int> y_pm(y.size());
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    for (std::size_t i = 0; i < y.size(); ++i) y_pm[i] = y[i] == m.classes[c] ? 1 : -1;
    detail::pegasos_binary(x, y_pm, hyper, derive_seed(hyper.seed, c), m.weights.row(c), m.bias[c]);
  }
  return m;
}

inline SvmModel train_svm_ovr(const DocTermMatrix& x, std::span<const int> y, const SvmHyper& hyper = {}) {
  return train_svm_ovr(x.rows, y, x.n_cols(), hyper);
}

inline std::vector<double> svm_decision_values(const SvmModel& m, const SparseVector& x) {
  if (x.dim != m.n_features())
    detail::fail(Errc::DimensionMismatch,
                 "feature dim " + std::to_string(x.dim) + " vs model " + std::to_string(m.n_features()));
  std::vector<double> out(m.classes.size());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = x.dot(m.weights.row(c)) + m.bias[c];
  return out;
}

/// argmax decision value; ties go to the smallest class id.
inline int predict_svm(const SvmModel& m, const SparseVector& x) {
  return m.classes[detail::argmax_first(svm_decision_values(m, x))];
}

}  // namespace abstractrank
