#include "isogeo/clustering.hpp"

#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"
#include "isogeo/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <random>

namespace isogeo {
namespace {

void check_k(std::span<const Point> points, int k) {
  if (points.empty()) throw InputError("k-means: empty point set");
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw InputError("k-means: K must lie in [1, N]");
  }
  const Eigen::Index d = points.front().size();
  for (const Point& p : points) {
    require_dim(p, d, "k-means point");
    require_finite(p, "k-means point");
  }
}

double sqdist(const Vector& a, const Vector& b) {
  return kernels::squared_distance(a, b);
}

// k-means++: first centre uniform, later ones with probability proportional
// to the squared distance to the nearest chosen centre.
std::vector<Point> kmeanspp(std::span<const Point> points, int k,
                            std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<Point> centres;
  centres.reserve(k);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  centres.push_back(points[pick(rng)]);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (centres.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sqdist(points[i], centres.back()));
      total += d2[i];
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centres.push_back(points[chosen]);
  }
  return centres;
}

template <typename Distance>
int nearest(const Point& p, std::span<const Point> centres, Distance&& dist) {
  int best = 0;
  double best_d = dist(p, centres[0]);
  for (std::size_t j = 1; j < centres.size(); ++j) {
    const double dj = dist(p, centres[j]);
    if (dj < best_d) {
      best_d = dj;
      best = static_cast<int>(j);
    }
  }
  return best;
}

double movement(std::span<const Point> a, std::span<const Point> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += sqdist(a[j], b[j]);
  return std::sqrt(s);
}

}  // namespace

ClusteringResult euclidean_kmeans(std::span<const Point> points, int k,
                                  std::uint64_t seed, const KMeansConfig& cfg) {
  check_k(points, k);
  std::mt19937_64 rng(seed);
  ClusteringResult out;
  out.centroids = kmeanspp(points, k, rng);
  out.labels.assign(points.size(), 0);
  const Eigen::Index d = points.front().size();

  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      out.labels[i] = nearest(points[i], out.centroids, sqdist);
    }
    std::vector<Point> next(k, Vector::Zero(d));
    std::vector<int> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      next[out.labels[i]] += points[i];
      ++counts[out.labels[i]];
    }
    for (int j = 0; j < k; ++j) {
      if (counts[j] > 0) {
        next[j] /= counts[j];
        continue;
      }
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double di = sqdist(points[i], out.centroids[out.labels[i]]);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      next[j] = points[far];
    }
    const double moved = movement(next, out.centroids);
    out.centroids = std::move(next);
    out.iterations = it + 1;
    if (moved < cfg.movement_tol) {
      out.converged = true;
      break;
    }
  }
  // Labels consistent with the returned centroids.
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.labels[i] = nearest(points[i], out.centroids, sqdist);
  }
  return out;
}

ClusteringResult riemannian_kmeans(const PullbackManifold& m,
                                   std::span<const Point> points, int k,
                                   std::uint64_t seed, const KMeansConfig& cfg) {
  check_k(points, k);
  std::vector<Point> images;
  images.reserve(points.size());
  for (const Point& p : points) images.push_back(m.to_phi(p));
  ClusteringResult out = euclidean_kmeans(images, k, seed, cfg);
  for (Point& c : out.centroids) c = m.from_phi(c);
  return out;
}

ClusteringResult iso_kmeans(const PullbackManifold& m,
                            std::span<const Point> points, int k,
                            std::uint64_t seed, const LineSearchConfig& line,
                            const KMeansConfig& cfg) {
  ClusteringResult out = riemannian_kmeans(m, points, k, seed, cfg);
  out.iterations = 0;
  out.converged = false;
  auto iso_dist = [&m](const Point& p, const Point& c) {
    return iso::distance(m, p, c);
  };

  for (int it = 0; it < cfg.max_iters; ++it) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      out.labels[i] = nearest(points[i], out.centroids, iso_dist);
    }
    std::vector<Point> next = out.centroids;
    for (int j = 0; j < k; ++j) {
      std::vector<Point> members;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (out.labels[i] == j) members.push_back(points[i]);
      }
      if (members.empty()) continue;
      next[j] = iso_barycentre(m, members, line).point;
    }
    const double moved = movement(next, out.centroids);
    out.centroids = std::move(next);
    out.iterations = it + 1;
    if (moved < cfg.movement_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw InputError("adjusted rand index: label vectors differ in length");
  }
  const auto n = static_cast<double>(a.size());
  if (a.size() < 2) return 1.0;
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows;
  std::map<int, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto pairs = [](double c) { return 0.5 * c * (c - 1.0); };
  double index = 0.0;
  for (const auto& [key, c] : table) index += pairs(c);
  double sum_rows = 0.0;
  for (const auto& [key, c] : rows) sum_rows += pairs(c);
  double sum_cols = 0.0;
  for (const auto& [key, c] : cols) sum_cols += pairs(c);
  const double expected = sum_rows * sum_cols / pairs(n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;  // both labelings trivial
  return (index - expected) / (max_index - expected);
}

void write_labels_csv(std::ostream& os, std::span<const Point> points,
                      std::span<const int> labels) {
  if (points.size() != labels.size()) {
    throw InputError("labels csv: points and labels differ in length");
  }
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  for (Eigen::Index j = 0; j < d; ++j) os << 'x' << (j + 1) << ',';
  os << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", points[i][j]);
      os << buf << ',';
    }
    os << labels[i] + 1 << '\n';
  }
}

}  // namespace isogeo
