#include "isogeo/descent.hpp"
#include "isogeo/diagnostics.hpp"
#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace isogeo;

namespace {

PullbackManifold named(const char* name) {
  return PullbackManifold(make_diffeomorphism(name));
}

Point p1(double a) {
  Point x(1);
  x << a;
  return x;
}

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Unit direction of d/dt phi^{-1}(phi(x) + t (phi(y) - phi(x))) at t = 0.
Vector fd_log_direction(const PullbackManifold& m, const Point& x,
                        const Point& y) {
  const Vector a = m.to_phi(x);
  const Vector w = m.to_phi(y) - a;
  const double h = 1e-6;
  const Vector v = (m.diffeo().inverse((a + h * w).eval()) -
                    m.diffeo().inverse((a - h * w).eval())) /
                   (2 * h);
  return v / v.norm();
}

}  // namespace

TEST_CASE("monotonicity and Lipschitz ratios are one on 1D manifolds") {
  PullbackManifold m = named("sinh_shift");
  const std::vector<Point> pts{p1(-1.2), p1(0.1), p1(0.4), p1(1.3)};
  LineSearchConfig cfg;
  cfg.tol = 1e-12;
  const Point xbar = iso_barycentre(m, pts, cfg).point;
  for (double x : {-2.0, -0.7, 0.0, 0.9, 1.8}) {
    const Point p = p1(x);
    const Vector field = barycentre_ratio_field(m, p, pts);
    CHECK(std::abs(iso_monotonicity_ratio(m, p, xbar, field) - 1.0) < 1e-8);
    CHECK(std::abs(iso_lipschitz_ratio(m, p, xbar, field) - 1.0) < 1e-8);
  }
  CHECK_THROWS_AS(iso_monotonicity_ratio(m, xbar, xbar, Vector::Zero(1)),
                  DegenerateError);
  CHECK_THROWS_AS(iso_lipschitz_ratio(m, xbar, xbar, Vector::Zero(1)),
                  DegenerateError);
}

TEST_CASE("ratios on the identity are one about the mean") {
  PullbackManifold id = named("identity");
  testing::PointSampler rng(id, 12);
  std::vector<Point> pts;
  for (int i = 0; i < 15; ++i) pts.push_back(rng());
  Point mean = Vector::Zero(2);
  for (const Point& p : pts) mean += p / 15.0;
  for (int i = 0; i < 10; ++i) {
    const Point x = rng();
    const Vector field = barycentre_ratio_field(id, x, pts);
    CHECK((field - (x - mean)).norm() < 1e-9);
    CHECK(std::abs(iso_monotonicity_ratio(id, x, mean, field) - 1.0) < 1e-9);
    CHECK(std::abs(iso_lipschitz_ratio(id, x, mean, field) - 1.0) < 1e-9);
  }
}

TEST_CASE("plain-log field uses the Levi-Civita log") {
  PullbackManifold m = named("sinh_shift");
  const std::vector<Point> pts{p1(-1.0), p1(0.5), p1(1.5)};
  for (double x : {-0.5, 0.2, 1.0}) {
    double sum = 0.0;
    for (const Point& p : pts) {
      sum += (std::sinh(p[0] + 1) - std::sinh(x + 1)) / std::cosh(x + 1);
    }
    const Vector f = barycentre_ratio_field(m, p1(x), pts,
                                            BarycentreFieldForm::PlainLog);
    CHECK(std::abs(f[0] + sum / 3.0) < 1e-10);
  }
  CHECK_THROWS_AS(barycentre_ratio_field(m, p1(0), std::vector<Point>{},
                                         BarycentreFieldForm::PlainLog),
                  InputError);
}

TEST_CASE("restricted isometry of c I is c^2 - 1 on every geometry") {
  for (const char* name : {"identity", "river", "spiral", "banana"}) {
    PullbackManifold m = named(name);
    testing::PointSampler rng(m, 21);
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < 10; ++i) pairs.emplace_back(rng(), rng());
    pairs.emplace_back(pairs[0].first, pairs[0].first);
    for (double c : {0.5, 1.0, 2.0}) {
      const auto w = restricted_isometry_check(m, c * Matrix::Identity(2, 2), pairs);
      INFO(name << " c=" << c);
      CHECK(std::abs(w.lower - (c * c - 1)) < 1e-9);
      CHECK(std::abs(w.upper - (c * c - 1)) < 1e-9);
      CHECK(w.evaluated == 10);
      CHECK(w.skipped == 1);
      CHECK(w.warnings.size() == 1);
    }
  }
}

TEST_CASE("restricted isometry ratios match a finite-difference log") {
  PullbackManifold m = named("river");
  testing::PointSampler rng(m, 4);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> normal;
  Matrix a(3, 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(gen);
  std::vector<std::pair<Point, Point>> pairs;
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 20; ++i) {
    const Point x = rng(), y = rng();
    pairs.emplace_back(x, y);
    const double r = (a * fd_log_direction(m, x, y)).squaredNorm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const auto w = restricted_isometry_check(m, a, pairs);
  CHECK(std::abs(w.lower - (lo - 1)) < 1e-5);
  CHECK(std::abs(w.upper - (hi - 1)) < 1e-5);
  CHECK_THROWS_AS(restricted_isometry_check(m, Matrix::Identity(3, 3), pairs),
                  DimensionError);
  const std::vector<std::pair<Point, Point>> same{{v2(1, 1), v2(1, 1)}};
  CHECK_THROWS_AS(restricted_isometry_check(m, a, same), InputError);
}

TEST_CASE("convexity terms on a banana line match the closed form") {
  PullbackManifold m = named("banana");
  Matrix dir(2, 1);
  dir << 0.0, 1.0;
  const Objective f =
      least_squares_objective(Matrix::Identity(2, 2), Vector::Zero(2));
  std::vector<double> ts;
  for (int i = 0; i <= 20; ++i) ts.push_back(i / 20.0);
  for (double c : {1.0, -8.0, 3.0}) {
    const GeodesicSubmanifold s(m, v2(c, 0.0), dir);
    const Point x = v2(c + 100.0 / 9.0, -10.0), y = v2(c + 36.0 / 9.0, 6.0);
    const auto terms = convexity_bounds_1d(s, f, x, y, ts);
    REQUIRE(terms.size() == ts.size());
    for (const ConvexityTerms& row : terms) {
      const double sv = -10.0 + 16.0 * row.t;
      const double q = 1.0 + 4.0 * sv * sv / 81.0;
      const double curv = (2.0 / 9.0) * (c - sv * sv / 9.0) / (q * q);
      INFO("c=" << c << " t=" << row.t);
      CHECK(std::abs(row.hess - 1.0) < 1e-9);
      CHECK(std::abs(row.curvature - curv) < 1e-6);
      CHECK(std::abs(row.sum() - (1.0 + curv)) < 1e-6);
    }
  }
}

TEST_CASE("convexity terms for flat cases") {
  PullbackManifold id = named("identity");
  Matrix dir(2, 1);
  dir << 1.0, 0.0;
  const GeodesicSubmanifold s(id, v2(0, 1), dir);
  Objective f = least_squares_objective(Matrix::Identity(2, 2), Vector::Zero(2));
  const std::vector<double> ts{0.0, 0.5, 1.0};
  for (const auto& row : convexity_bounds_1d(s, f, v2(-1, 1), v2(2, 1), ts)) {
    CHECK(std::abs(row.hess - 1.0) < 1e-12);
    CHECK(std::abs(row.curvature) < 1e-9);
  }
  // Without an analytic Hessian the gradient is differenced.
  f.hessian_vector = nullptr;
  for (const auto& row : convexity_bounds_1d(s, f, v2(-1, 1), v2(2, 1), ts)) {
    CHECK(std::abs(row.hess - 1.0) < 1e-8);
  }

  PullbackManifold sh = named("sinh_shift");
  Matrix one(1, 1);
  one << 1.0;
  const GeodesicSubmanifold line(sh, p1(0.0), one);
  const Objective g = least_squares_objective(Matrix::Identity(1, 1), p1(0.3));
  for (const auto& row : convexity_bounds_1d(line, g, p1(-1.0), p1(1.5), ts)) {
    CHECK(std::abs(row.sum() - 1.0) < 1e-8);
  }
}

TEST_CASE("convexity terms reject a two-dimensional submanifold") {
  PullbackManifold id = named("identity");
  const GeodesicSubmanifold s(id, v2(0, 0), Matrix::Identity(2, 2));
  const Objective f =
      least_squares_objective(Matrix::Identity(2, 2), Vector::Zero(2));
  const std::vector<double> ts{0.5};
  CHECK_THROWS_AS(convexity_bounds_1d(s, f, v2(0, 0), v2(1, 1), ts), InputError);
}
