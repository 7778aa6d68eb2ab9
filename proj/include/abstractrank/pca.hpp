#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "vectorize.hpp"

namespace abstractrank {

/// Principal axes of a column-centered data matrix.
struct PcaModel {
  std::vector<double> mean;            // per column
  DenseMatrix components;              // k x n_cols, orthonormal rows
  std::vector<double> singular_values; // k, descending
  std::vector<double> spectrum;        // every singular value of the centered matrix
};

struct PcaOptions {
  std::size_t max_docs = 20000;
};

namespace detail {

// Sign convention: the largest-magnitude entry of every component is positive.
inline void orient(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0)
    for (auto& x : v) x = -x;
}

// Orthonormalizes row r of `m` against rows [0, r); falls back to unit
// vectors when the row is (numerically) inside the span of its predecessors.
inline void complete_row(DenseMatrix& m, std::size_t r) {
  auto project_out = [&](std::span<double> v) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t q = 0; q < r; ++q) {
        const double c = dot(v, m.row(q));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * m(q, j);
      }
  };
  auto v = m.row(r);
  project_out(v);
  double norm = std::sqrt(dot(v, v));
  for (std::size_t axis = 0; norm < 1e-10 && axis < m.cols(); ++axis) {
    std::fill(v.begin(), v.end(), 0.0);
    v[axis] = 1.0;
    project_out(v);
    norm = std::sqrt(dot(v, v));
  }
  for (auto& x : v) x /= norm;
}

}  // namespace detail

/// Fits the top-k principal components.
///
/// Columns are centered, then the smaller Gram matrix is eigen-decomposed:
/// XᵀX when n_cols <= n_rows (its eigenvectors are the components directly),
/// otherwise XXᵀ, whose eigenvectors u give components Xᵀu / sigma.
/// Singular values are the square roots of the Gram eigenvalues.
inline PcaModel pca_fit(const DenseMatrix& x, std::size_t k, PcaOptions opts = {}) {
  const std::size_t n = x.rows(), d = x.cols();
  if (n > opts.max_docs)
    detail::fail(Errc::InvalidArgument, std::to_string(n) + " rows exceeds the PCA limit of " +
                                            std::to_string(opts.max_docs) + " documents");
  if (n < 2 || k == 0 || k > std::min(n - 1, d))
    detail::fail(Errc::InvalidArgument, "pca_fit requires 1 <= k <= min(n_rows - 1, n_cols)");

  PcaModel model;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += x(i, j);
  for (auto& m : model.mean) m /= static_cast<double>(n);

  DenseMatrix centered(n, d);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      centered(i, j) = x(i, j) - model.mean[j];
      total += centered(i, j) * centered(i, j);
    }
  if (total == 0.0) detail::fail(Errc::DegenerateData, "all rows are identical");

  const bool by_columns = d <= n;
  const std::size_t g = by_columns ? d : n;
  DenseMatrix gram(g, g);
  if (by_columns) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = centered.row(i);
      for (std::size_t a = 0; a < d; ++a) {
        if (r[a] == 0.0) continue;
        for (std::size_t b = 0; b <= a; ++b) gram(a, b) += r[a] * r[b];
      }
    }
  } else {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b <= a; ++b) gram(a, b) = dot(centered.row(a), centered.row(b));
  }
  const auto eig = symmetric_eigen(gram);

  model.spectrum.resize(g);
  for (std::size_t i = 0; i < g; ++i) model.spectrum[i] = std::sqrt(std::max(eig.values[i], 0.0));
  const double cutoff = model.spectrum.front() * 1e-10;
  for (auto& s : model.spectrum)
    if (s <= cutoff) s = 0.0;

  model.singular_values.assign(model.spectrum.begin(), model.spectrum.begin() + static_cast<std::ptrdiff_t>(k));
  model.components = DenseMatrix(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    auto row = model.components.row(c);
    if (by_columns) {
      for (std::size_t j = 0; j < d; ++j) row[j] = eig.vectors(j, c);
    } else if (model.spectrum[c] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double u = eig.vectors(i, c);
        if (u == 0.0) continue;
        const auto xr = centered.row(i);
        for (std::size_t j = 0; j < d; ++j) row[j] += u * xr[j];
      }
    }
    detail::complete_row(model.components, c);
    detail::orient(row);
  }
  return model;
}

inline PcaModel pca_fit(const DocTermMatrix& x, std::size_t k, PcaOptions opts = {}) {
  if (x.n_rows() > opts.max_docs)
    detail::fail(Errc::InvalidArgument, std::to_string(x.n_rows()) + " documents exceeds the PCA limit of " +
                                            std::to_string(opts.max_docs));
  return pca_fit(densify(x), k, opts);
}

/// sigma_i^2 / sum_j sigma_j^2 for each kept component, the sum running over
/// the full spectrum.
inline std::vector<double> explained_variance_ratio(const PcaModel& m) {
  double total = 0.0;
  for (double s : m.spectrum) total += s * s;
  std::vector<double> ratios;
  ratios.reserve(m.singular_values.size());
  for (double s : m.singular_values) ratios.push_back(total > 0.0 ? s * s / total : 0.0);
  return ratios;
}

/// Scores (n_rows x k) of `x` in component space.
inline DenseMatrix pca_transform(const PcaModel& m, const DenseMatrix& x) {
  if (x.cols() != m.mean.size()) detail::fail(Errc::DimensionMismatch, "pca_transform");
  const std::size_t k = m.components.rows();
  DenseMatrix scores(x.rows(), k);
  std::vector<double> centered(x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) centered[j] = x(i, j) - m.mean[j];
    for (std::size_t c = 0; c < k; ++c) scores(i, c) = dot(centered, m.components.row(c));
  }
  return scores;
}

/// Maps scores back to the centered data space (mean not added).
inline DenseMatrix pca_reconstruct_centered(const PcaModel& m, const DenseMatrix& scores) {
  return matmul(scores, m.components);
}

}  // namespace abstractrank
