#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace abstractrank {

struct KmeansModel {
  DenseMatrix centroids;
  double inertia = 0.0;
  std::vector<std::size_t> assignments;
  std::vector<double> inertia_trace;  // per Lloyd assignment step of the winning restart
};

struct KmeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
};

struct ElbowCurve {
  std::vector<std::size_t> ks;
  std::vector<double> inertias;
  std::size_t chosen_k = 0;
};

namespace detail {

inline DenseMatrix kmeanspp_seed(const DenseMatrix& x, std::size_t k, Rng& rng) {
  const std::size_t n = x.rows();
  DenseMatrix c(k, x.cols());
  auto first = x.row(static_cast<std::size_t>(rng.below(n)));
  std::copy(first.begin(), first.end(), c.row(0).begin());
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(x.row(i), c.row(0));
  for (std::size_t j = 1; j < k; ++j) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    std::copy(x.row(pick).begin(), x.row(pick).end(), c.row(j).begin());
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(x.row(i), c.row(j)));
  }
  return c;
}

// Nearest centroid, ties to the lower index. Returns the squared distance.
inline double nearest(std::span<const double> p, const DenseMatrix& c, std::size_t& which) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.rows(); ++j) {
    const double d = squared_distance(p, c.row(j));
    if (d < best) {
      best = d;
      which = j;
    }
  }
  return best;
}

inline KmeansModel lloyd(const DenseMatrix& x, DenseMatrix centroids, std::size_t max_iters) {
  const std::size_t n = x.rows(), k = centroids.rows(), dim = x.cols();
  KmeansModel m;
  m.assignments.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<double> dist(n);
  for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iters, 1); ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = 0;
      dist[i] = nearest(x.row(i), centroids, j);
      inertia += dist[i];
      if (j != m.assignments[i]) {
        m.assignments[i] = j;
        changed = true;
      }
    }
    m.inertia = inertia;
    m.inertia_trace.push_back(inertia);
    if (!changed || iter + 1 >= max_iters) break;

    // Update step.
    DenseMatrix sums(k, dim);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = x.row(i);
      auto s = sums.row(m.assignments[i]);
      for (std::size_t d = 0; d < dim; ++d) s[d] += r[d];
      ++sizes[m.assignments[i]];
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (sizes[j] == 0) {
        // Empty cluster: move its centroid onto the point farthest from its own centroid.
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (dist[i] > dist[far]) far = i;
        std::copy(x.row(far).begin(), x.row(far).end(), centroids.row(j).begin());
        dist[far] = 0.0;
        continue;
      }
      auto c = centroids.row(j);
      const auto s = sums.row(j);
      for (std::size_t d = 0; d < dim; ++d) c[d] = s[d] / static_cast<double>(sizes[j]);
    }
  }
  m.centroids = std::move(centroids);
  return m;
}

}  // namespace detail

/// Lloyd's algorithm from k-means++ seeds, keeping the lowest-inertia
/// restart (ties keep the earlier restart). Restart r draws from
/// derive_seed(seed, k, r), so results do not depend on execution order.
inline KmeansModel kmeans_fit(const DenseMatrix& x, std::size_t k, std::uint64_t seed, KmeansOptions opts = {}) {
  if (k == 0) detail::fail(Errc::InvalidArgument, "k must be positive");
  if (x.rows() < k)
    detail::fail(Errc::TooFewPoints, std::to_string(x.rows()) + " points for k=" + std::to_string(k));
  KmeansModel best;
  bool have = false;
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.restarts, 1); ++r) {
    Rng rng(derive_seed(seed, k, r));
    auto model = detail::lloyd(x, detail::kmeanspp_seed(x, k, rng), opts.max_iters);
    if (!have || model.inertia < best.inertia) {
      best = std::move(model);
      have = true;
    }
  }
  return best;
}

/// Index into `ks` of the interior point farthest from the chord joining the
/// first and last (k, inertia) points. Ties resolve to the smaller k; with no
/// interior point the first k is returned.
inline std::size_t elbow_index(std::span<const std::size_t> ks, std::span<const double> inertias) {
  if (ks.size() != inertias.size() || ks.size() < 2)
    detail::fail(Errc::InvalidArgument, "elbow needs at least two (k, inertia) points");
  if (ks.size() == 2) return 0;
  const double x0 = static_cast<double>(ks.front()), y0 = inertias.front();
  const double x1 = static_cast<double>(ks.back()), y1 = inertias.back();
  const double dx = x1 - x0, dy = y1 - y0;
  const double len = std::hypot(dx, dy);
  std::size_t best = 1;
  double best_dist = -1.0;
  for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
    const double px = static_cast<double>(ks[i]) - x0, py = inertias[i] - y0;
    const double dist = std::abs(dx * py - dy * px) / len;
    // Relative slack so that collinear points tie despite rounding.
    if (dist > best_dist + 1e-12 * std::max(1.0, std::abs(best_dist))) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

inline ElbowCurve elbow_select(const DenseMatrix& x, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                               KmeansOptions opts = {}) {
  if (k_min < 1 || k_max <= k_min) detail::fail(Errc::InvalidArgument, "elbow needs 1 <= k_min < k_max");
  if (k_max > x.rows())
    detail::fail(Errc::TooFewPoints, std::to_string(x.rows()) + " points for k_max=" + std::to_string(k_max));
  ElbowCurve curve;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    curve.ks.push_back(k);
    curve.inertias.push_back(kmeans_fit(x, k, seed, opts).inertia);
  }
  curve.chosen_k = curve.ks[elbow_index(curve.ks, curve.inertias)];
  return curve;
}

}  // namespace abstractrank
