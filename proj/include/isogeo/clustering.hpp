#pragma once

#include "isogeo/descent.hpp"
#include "isogeo/pullback.hpp"
#include "isogeo/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace isogeo {

/// Labels are 0-based cluster indices in memory; CSV output is 1-based.
struct ClusteringResult {
  std::vector<int> labels;
  std::vector<Point> centroids;
  int iterations = 0;
  bool converged = false;
};

struct KMeansConfig {
  int max_iters = 100;
  double movement_tol = 1e-4;  // sqrt(sum_j |c_j_new - c_j_old|^2)
};

/// Lloyd's algorithm with l2 distances and k-means++ seeding. An emptied
/// cluster is reseeded at the point farthest from its current centroid.
ClusteringResult euclidean_kmeans(std::span<const Point> points, int k,
                                  std::uint64_t seed,
                                  const KMeansConfig& cfg = {});

/// Lloyd's algorithm with the pullback distance and the closed-form
/// barycentre. Runs Euclidean k-means on phi(points) and maps the centroids
/// back through phi^{-1}, so movement is measured in phi-coordinates.
ClusteringResult riemannian_kmeans(const PullbackManifold& m,
                                   std::span<const Point> points, int k,
                                   std::uint64_t seed,
                                   const KMeansConfig& cfg = {});

/// Lloyd's algorithm with iso-distances and iso-barycentres, started from
/// riemannian_kmeans. Ties go to the lowest cluster index; an empty cluster
/// keeps its previous centroid; a stalled barycentre solve contributes its
/// last iterate.
ClusteringResult iso_kmeans(const PullbackManifold& m,
                            std::span<const Point> points, int k,
                            std::uint64_t seed, const LineSearchConfig& line,
                            const KMeansConfig& cfg = {});

/// Adjusted Rand index from the contingency table. Label values are arbitrary
/// integers.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

/// Columns: x1..xd, label (1-based).
void write_labels_csv(std::ostream& os, std::span<const Point> points,
                      std::span<const int> labels);

}  // namespace isogeo
