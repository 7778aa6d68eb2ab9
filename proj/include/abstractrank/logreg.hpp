#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "vectorize.hpp"

namespace abstractrank {

struct LogRegHyper {
  double learning_rate = 0.1;
  double l2_lambda = 1e-4;
  std::size_t epochs = 200;
  std::size_t batch_size = 0;  // 0: full batch
  std::uint64_t seed = 0;
};

/// Multinomial logistic regression. Row c of `weights` and `bias[c]` score
/// `classes[c]`; classes are kept in ascending order.
struct LogRegModel {
  std::vector<int> classes;
  DenseMatrix weights;
  std::vector<double> bias;
  LogRegHyper hyper;
  std::vector<double> loss_history;  // [0] at init, then one per epoch

  std::size_t n_features() const { return weights.cols(); }
  std::size_t n_classes() const { return classes.size(); }
};

struct LossGradient {
  double loss = 0.0;
  DenseMatrix grad_w;
  std::vector<double> grad_b;
};

namespace detail {

inline std::vector<int> distinct_classes(std::span<const int> y) {
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

inline std::vector<std::size_t> class_indices(std::span<const int> y, const std::vector<int>& classes) {
  std::vector<std::size_t> idx(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    idx[i] = static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin());
  return idx;
}

inline void softmax_inplace(std::span<double> z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (auto& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (auto& v : z) v /= sum;
}

inline std::size_t argmax_first(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

inline void check_training_inputs(std::span<const SparseVector> x, std::span<const int> y, std::size_t n_features) {
  if (x.size() != y.size())
    detail::fail(Errc::LengthMismatch, std::to_string(x.size()) + " rows vs " + std::to_string(y.size()) + " labels");
  if (x.empty()) detail::fail(Errc::InvalidArgument, "no training rows");
  for (const auto& row : x)
    if (row.dim != n_features) detail::fail(Errc::DimensionMismatch, "training row dimension");
}

}  // namespace detail

/// Mean multinomial cross-entropy over the selected rows plus
/// (lambda/2)||W||^2 (bias unregularized), with its gradient.
inline LossGradient logreg_loss_gradient(const DenseMatrix& w, std::span<const double> b,
                                         std::span<const SparseVector> x, std::span<const std::size_t> y_idx,
                                         double lambda, std::span<const std::size_t> rows = {}) {
  const std::size_t c = w.rows(), f = w.cols();
  LossGradient out{0.0, DenseMatrix(c, f), std::vector<double>(c, 0.0)};
  std::vector<std::size_t> all;
  if (rows.empty()) {
    all.resize(x.size());
    std::iota(all.begin(), all.end(), 0);
    rows = all;
  }
  std::vector<double> z(c);
  for (const auto i : rows) {
    for (std::size_t k = 0; k < c; ++k) z[k] = x[i].dot(w.row(k)) + b[k];
    const double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - mx);
    out.loss += -(z[y_idx[i]] - mx - std::log(sum));
    for (std::size_t k = 0; k < c; ++k) {
      const double residual = std::exp(z[k] - mx) / sum - (k == y_idx[i] ? 1.0 : 0.0);
      out.grad_b[k] += residual;
      auto g = out.grad_w.row(k);
      for (const auto& e : x[i].entries) g[e.index] += residual * e.value;
    }
  }
  const double inv = 1.0 / static_cast<double>(rows.size());
  out.loss *= inv;
  for (auto& v : out.grad_w.data()) v *= inv;
  for (auto& v : out.grad_b) v *= inv;
  double reg = 0.0;
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t j = 0; j < f; ++j) {
      reg += w(k, j) * w(k, j);
      out.grad_w(k, j) += lambda * w(k, j);
    }
  out.loss += 0.5 * lambda * reg;
  return out;
}

/// Gradient descent from zero weights. Full batch unless hyper.batch_size is
/// set, in which case every epoch walks a seeded shuffle in mini-batches.
inline LogRegModel train_logreg(std::span<const SparseVector> x, std::span<const int> y, std::size_t n_features,
                                const LogRegHyper& hyper = {}) {
  detail::check_training_inputs(x, y, n_features);
  LogRegModel m;
  m.classes = detail::distinct_classes(y);
  if (m.classes.size() < 2) detail::fail(Errc::SingleClass, "class " + std::to_string(m.classes.front()));
  m.hyper = hyper;
  m.weights = DenseMatrix(m.classes.size(), n_features);
  m.bias.assign(m.classes.size(), 0.0);
  const auto y_idx = detail::class_indices(y, m.classes);

  auto full_loss = [&] { return logreg_loss_gradient(m.weights, m.bias, x, y_idx, hyper.l2_lambda).loss; };
  auto step = [&](const LossGradient& g) {
    auto wd = m.weights.data();
    const auto gd = g.grad_w.data();
    for (std::size_t i = 0; i < wd.size(); ++i) wd[i] -= hyper.learning_rate * gd[i];
    for (std::size_t k = 0; k < m.bias.size(); ++k) m.bias[k] -= hyper.learning_rate * g.grad_b[k];
  };
  auto check = [&](double loss) {
    if (!std::isfinite(loss))
      detail::fail(Errc::NonFiniteLoss, "training diverged; lower the learning rate (" +
                                            std::to_string(hyper.learning_rate) + ")");
    m.loss_history.push_back(loss);
  };

  check(full_loss());
  const bool full_batch = hyper.batch_size == 0 || hyper.batch_size >= x.size();
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(hyper.seed);
  for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    if (full_batch) {
      auto g = logreg_loss_gradient(m.weights, m.bias, x, y_idx, hyper.l2_lambda);
      step(g);
    } else {
      rng.shuffle(std::span<std::size_t>(order));
      for (std::size_t start = 0; start < order.size(); start += hyper.batch_size) {
        const auto len = std::min(hyper.batch_size, order.size() - start);
        auto g = logreg_loss_gradient(m.weights, m.bias, x, y_idx, hyper.l2_lambda,
                                      std::span<const std::size_t>(order).subspan(start, len));
        step(g);
      }
    }
    check(full_loss());
  }
  return m;
}

inline LogRegModel train_logreg(const DocTermMatrix& x, std::span<const int> y, const LogRegHyper& hyper = {}) {
  return train_logreg(x.rows, y, x.n_cols(), hyper);
}

/// softmax(Wx + b), in class order.
inline std::vector<double> predict_proba(const LogRegModel& m, const SparseVector& x) {
  if (x.dim != m.n_features())
    detail::fail(Errc::DimensionMismatch,
                 "feature dim " + std::to_string(x.dim) + " vs model " + std::to_string(m.n_features()));
  std::vector<double> z(m.n_classes());
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = x.dot(m.weights.row(k)) + m.bias[k];
  detail::softmax_inplace(z);
  return z;
}

inline int predict_logreg(const LogRegModel& m, const SparseVector& x) {
  return m.classes[detail::argmax_first(predict_proba(m, x))];
}

}  // namespace abstractrank
