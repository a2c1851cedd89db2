#include "isogeo/clustering.hpp"
#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace isogeo;

namespace {

PullbackManifold named(const char* name) {
  return PullbackManifold(make_diffeomorphism(name));
}

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

double choose2(long n) { return 0.5 * n * (n - 1); }

// Pair-counting ARI over all N (N - 1) / 2 pairs.
double brute_ari(const std::vector<int>& a, const std::vector<int>& b) {
  const long n = static_cast<long>(a.size());
  long both = 0, in_a = 0, in_b = 0;
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      both += sa && sb;
      in_a += sa;
      in_b += sb;
    }
  }
  const double total = choose2(n);
  const double expected = static_cast<double>(in_a) * in_b / total;
  const double max_index = 0.5 * (in_a + in_b);
  return (both - expected) / (max_index - expected);
}

// Two groups separated along the river in phi-coordinates.
std::vector<Point> river_clusters(std::uint64_t seed, std::vector<int>& truth) {
  const PullbackManifold m = named("river");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> across(0.0, 0.1);
  std::uniform_real_distribution<double> along(2.0, 6.0);
  std::vector<Point> pts;
  truth.clear();
  for (int i = 0; i < 60; ++i) {
    const int c = i % 2;
    const double t = c == 0 ? -along(rng) : along(rng);
    pts.push_back(m.from_phi(v2(across(rng), t)));
    truth.push_back(c);
  }
  return pts;
}

}  // namespace

TEST_CASE("adjusted rand index agrees with pair counting") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> la(0, 3), lb(5, 7);
    std::vector<int> a(40), b(40);
    for (int i = 0; i < 40; ++i) a[i] = la(rng), b[i] = lb(rng);
    CHECK(std::abs(adjusted_rand_index(a, b) - brute_ari(a, b)) < 1e-12);
  }
  std::vector<int> a{0, 0, 1, 1, 2, 2};
  std::vector<int> relabelled{7, 7, 3, 3, 9, 9};
  CHECK(adjusted_rand_index(a, relabelled) == doctest::Approx(1.0));

  std::vector<int> constant(100, 0), balanced(100);
  for (int i = 0; i < 100; ++i) balanced[i] = i % 2;
  CHECK(std::abs(adjusted_rand_index(constant, balanced)) < 1e-12);
  CHECK(adjusted_rand_index(constant, constant) == 1.0);
  CHECK_THROWS_AS(adjusted_rand_index(a, constant), InputError);
}

TEST_CASE("euclidean k-means separates blobs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.2);
  const std::vector<Vector> centres{v2(0, 0), v2(5, 5), v2(-5, 5)};
  std::vector<Point> pts;
  std::vector<int> truth;
  for (int i = 0; i < 90; ++i) {
    pts.push_back(centres[i % 3] + v2(noise(rng), noise(rng)));
    truth.push_back(i % 3);
  }
  const ClusteringResult r = euclidean_kmeans(pts, 3, 1);
  CHECK(r.converged);
  CHECK(r.labels.size() == 90);
  CHECK(adjusted_rand_index(r.labels, truth) == doctest::Approx(1.0));
  for (int j = 0; j < 3; ++j) {
    Point mean = Vector::Zero(2);
    int count = 0;
    for (int i = 0; i < 90; ++i) {
      if (r.labels[i] == j) mean += pts[i], ++count;
    }
    CHECK((r.centroids[j] - mean / count).norm() < 1e-3);
  }
}

TEST_CASE("k-means edge values of K") {
  std::vector<Point> pts{v2(0, 0), v2(1, 0), v2(0, 3), v2(4, 4)};
  const ClusteringResult all = euclidean_kmeans(pts, 4, 2);
  std::vector<int> seen(4, 0);
  for (int l : all.labels) ++seen[l];
  for (int s : seen) CHECK(s == 1);

  const ClusteringResult one = euclidean_kmeans(pts, 1, 2);
  for (int l : one.labels) CHECK(l == 0);
  CHECK((one.centroids[0] - v2(1.25, 1.75)).norm() < 1e-12);

  CHECK_THROWS_AS(euclidean_kmeans(pts, 0, 1), InputError);
  CHECK_THROWS_AS(euclidean_kmeans(pts, 5, 1), InputError);
  CHECK_THROWS_AS(euclidean_kmeans(std::vector<Point>{}, 1, 1), InputError);
  PullbackManifold m = named("river");
  CHECK_THROWS_AS(iso_kmeans(m, pts, 5, 1, LineSearchConfig{}), InputError);
}

TEST_CASE("riemannian k-means is k-means in phi-coordinates") {
  PullbackManifold m = named("river");
  std::vector<int> truth;
  const std::vector<Point> pts = river_clusters(3, truth);
  std::vector<Point> images;
  for (const Point& p : pts) images.push_back(m.to_phi(p));
  const ClusteringResult e = euclidean_kmeans(images, 2, 9);
  const ClusteringResult r = riemannian_kmeans(m, pts, 2, 9);
  CHECK(r.labels == e.labels);
  for (int j = 0; j < 2; ++j) {
    CHECK((r.centroids[j] - m.from_phi(e.centroids[j])).norm() < 1e-12);
    // Fixed point: phi(centroid) is the phi-mean of its members.
    Vector mean = Vector::Zero(2);
    int count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (r.labels[i] == j) mean += images[i], ++count;
    }
    CHECK((m.to_phi(r.centroids[j]) - mean / count).norm() < 1e-3);
  }

  PullbackManifold id = named("identity");
  const ClusteringResult a = riemannian_kmeans(id, pts, 2, 4);
  const ClusteringResult b = euclidean_kmeans(pts, 2, 4);
  CHECK(a.labels == b.labels);
}

TEST_CASE("iso k-means on the identity matches euclidean k-means") {
  PullbackManifold id = named("identity");
  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) {
    pts.push_back((i % 2 ? v2(3, 0) : v2(-3, 1)) + v2(noise(rng), noise(rng)));
  }
  LineSearchConfig line;
  line.tol = 1e-10;
  const ClusteringResult iso = iso_kmeans(id, pts, 2, 11, line);
  const ClusteringResult euc = euclidean_kmeans(pts, 2, 11);
  CHECK(iso.converged);
  CHECK(iso.labels == euc.labels);
  for (int j = 0; j < 2; ++j) {
    CHECK((iso.centroids[j] - euc.centroids[j]).norm() < 1e-6);
  }
}

TEST_CASE("iso k-means recovers river clusters") {
  PullbackManifold m = named("river");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    std::vector<int> truth;
    const std::vector<Point> pts = river_clusters(seed, truth);
    LineSearchConfig line;
    line.tol = 1e-6;
    const ClusteringResult r = iso_kmeans(m, pts, 2, seed, line);
    INFO("seed " << seed);
    CHECK(r.converged);
    CHECK(adjusted_rand_index(r.labels, truth) == doctest::Approx(1.0));
    // Each point is assigned to its iso-nearest centroid.
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double own = iso::distance(m, pts[i], r.centroids[r.labels[i]]);
      const double other =
          iso::distance(m, pts[i], r.centroids[1 - r.labels[i]]);
      CHECK(own <= other);
    }
    const ClusteringResult again = iso_kmeans(m, pts, 2, seed, line);
    CHECK(again.labels == r.labels);
    CHECK(again.centroids[0] == r.centroids[0]);
  }
}

TEST_CASE("labels csv is one-based") {
  std::vector<Point> pts{v2(0.5, -1), v2(2, 0.25)};
  std::vector<int> labels{0, 1};
  std::ostringstream os;
  write_labels_csv(os, pts, labels);
  CHECK(os.str() == "x1,x2,label\n0.5,-1,1\n2,0.25,2\n");
  std::vector<int> short_labels{0};
  CHECK_THROWS_AS(write_labels_csv(os, pts, short_labels), InputError);
}
