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

/// V ≈ W H with W (n_docs x k) and H (k x n_terms) entrywise non-negative.
/// objective_trace[0] is the objective at initialization; entry t is the
/// objective after update t.
struct NmfFactors {
  DenseMatrix w;
  DenseMatrix h;
  std::vector<double> objective_trace;
};

struct NmfOptions {
  std::size_t max_iters = 400;
  double tol = 1e-5;
  std::uint64_t seed = 0;
};

inline constexpr double kNmfEpsilon = 1e-12;

namespace detail {

// ||V - WH||_F^2 = ||V||^2 - 2 sum_{ij in nnz(V)} V_ij (WH)_ij + tr((WᵀW)(HHᵀ)).
inline double nmf_objective(std::span<const SparseVector> v, double v_norm2, const DenseMatrix& w,
                            const DenseMatrix& h) {
  const std::size_t k = h.rows();
  double cross = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& e : v[i].entries) {
      double wh = 0.0;
      for (std::size_t c = 0; c < k; ++c) wh += w(i, c) * h(c, e.index);
      cross += e.value * wh;
    }
  DenseMatrix wtw(k, k), hht(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) s += w(i, a) * w(i, b);
      wtw(a, b) = s;
      hht(a, b) = dot(h.row(a), h.row(b));
    }
  double trace = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) trace += wtw(a, b) * hht(b, a);
  return std::max(0.0, v_norm2 - 2.0 * cross + trace);
}

}  // namespace detail

/// Frobenius-norm NMF by multiplicative updates:
///   H <- H ⊙ (WᵀV) / (WᵀWH + eps),  W <- W ⊙ (VHᵀ) / (WHHᵀ + eps).
/// Initial entries are uniform(0,1) * sqrt(mean(V)/k) from a seeded Rng.
/// Stops after max_iters updates or once the relative objective change
/// falls below tol.
inline NmfFactors factorize_nonnegative(std::span<const SparseVector> v, std::size_t n_cols, std::size_t k,
                                        NmfOptions opts = {}) {
  const std::size_t n = v.size();
  if (k == 0) detail::fail(Errc::InvalidArgument, "NMF rank must be positive");
  if (k > std::min(n, n_cols))
    detail::fail(Errc::RankTooLarge, "k=" + std::to_string(k) + " exceeds min(" + std::to_string(n) + ", " +
                                         std::to_string(n_cols) + ")");
  double sum = 0.0, v_norm2 = 0.0;
  for (const auto& row : v) {
    if (row.dim != n_cols) detail::fail(Errc::DimensionMismatch, "NMF input rows");
    for (const auto& e : row.entries) {
      if (e.value < 0.0) detail::fail(Errc::InvalidArgument, "NMF input must be non-negative");
      sum += e.value;
      v_norm2 += e.value * e.value;
    }
  }
  const double scale = std::sqrt(sum / static_cast<double>(n * n_cols) / static_cast<double>(k));

  NmfFactors f{DenseMatrix(n, k), DenseMatrix(k, n_cols), {}};
  Rng rng(opts.seed);
  for (auto& x : f.w.data()) x = rng.uniform() * scale;
  for (auto& x : f.h.data()) x = rng.uniform() * scale;

  f.objective_trace.push_back(detail::nmf_objective(v, v_norm2, f.w, f.h));

  DenseMatrix numer_h(k, n_cols), numer_w(n, k), gram(k, k);
  for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
    // H update.
    std::fill(numer_h.data().begin(), numer_h.data().end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : v[i].entries)
        for (std::size_t c = 0; c < k; ++c) numer_h(c, e.index) += f.w(i, c) * e.value;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f.w(i, a) * f.w(i, b);
        gram(a, b) = s;
      }
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < n_cols; ++j) {
        double denom = 0.0;
        for (std::size_t b = 0; b < k; ++b) denom += gram(c, b) * f.h(b, j);
        f.h(c, j) *= numer_h(c, j) / (denom + kNmfEpsilon);
      }

    // W update.
    std::fill(numer_w.data().begin(), numer_w.data().end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : v[i].entries)
        for (std::size_t c = 0; c < k; ++c) numer_w(i, c) += e.value * f.h(c, e.index);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) gram(a, b) = dot(f.h.row(a), f.h.row(b));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < k; ++c) {
        double denom = 0.0;
        for (std::size_t b = 0; b < k; ++b) denom += f.w(i, b) * gram(b, c);
        f.w(i, c) *= numer_w(i, c) / (denom + kNmfEpsilon);
      }

    const double prev = f.objective_trace.back();
    const double cur = detail::nmf_objective(v, v_norm2, f.w, f.h);
    f.objective_trace.push_back(cur);
    if (prev > 0.0 && std::abs(prev - cur) / prev < opts.tol) break;
    if (cur == 0.0) break;
  }
  return f;
}

inline NmfFactors nmf_fit(const DocTermMatrix& v, std::size_t k, NmfOptions opts = {}) {
  if (v.weighting != Weighting::Tfidf) detail::fail(Errc::InvalidArgument, "nmf_fit expects a TF-IDF matrix");
  return factorize_nonnegative(v.rows, v.n_cols(), k, opts);
}

struct TopicSummary {
  std::size_t topic_id = 0;  // 1-based
  std::vector<std::string> top_terms;
  std::vector<double> weights;
};

/// The n heaviest terms of every row of H, heaviest first; equal weights are
/// ordered by vocabulary (lexicographic) position.
inline std::vector<TopicSummary> topic_top_terms(const NmfFactors& f, const Vocabulary& vocab, std::size_t n) {
  if (f.h.cols() != vocab.size()) detail::fail(Errc::DimensionMismatch, "H columns vs vocabulary");
  if (n == 0 || n > vocab.size()) detail::fail(Errc::InvalidArgument, "top-term count must be in 1..|vocab|");
  std::vector<TopicSummary> topics;
  std::vector<std::size_t> order(vocab.size());
  for (std::size_t t = 0; t < f.h.rows(); ++t) {
    const auto row = f.h.row(t);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                      [&](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
    TopicSummary s;
    s.topic_id = t + 1;
    for (std::size_t i = 0; i < n; ++i) {
      s.top_terms.push_back(vocab.term(order[i]));
      s.weights.push_back(row[order[i]]);
    }
    topics.push_back(std::move(s));
  }
  return topics;
}

}  // namespace abstractrank
