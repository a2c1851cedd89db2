#include "isogeo/error.hpp"
#include "isogeo/pullback.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

using namespace isogeo;

namespace {

PullbackManifold named(const char* name) {
  return PullbackManifold(make_diffeomorphism(name));
}

}  // namespace

TEST_CASE("identity pullback reduces to Euclidean mappings") {
  PullbackManifold m = named("identity");
  testing::PointSampler sample(m, 1);
  for (int i = 0; i < 50; ++i) {
    const Point x = sample();
    const Point y = sample();
    const Vector xi = sample.normal_vector(2);
    const double t = sample.uniform(0.0, 1.0);
    CHECK(m.distance(x, y) == doctest::Approx((x - y).norm()).epsilon(1e-14));
    CHECK((m.geodesic(x, y, t) - ((1 - t) * x + t * y)).norm() < 1e-14);
    CHECK((m.geodesic_velocity(x, y, t).vec - (y - x)).norm() < 1e-14);
    CHECK((m.exp({x, xi}) - (x + xi)).norm() < 1e-14);
    CHECK((m.log(x, y).vec - (y - x)).norm() < 1e-14);
    CHECK((m.transport(x, y, {x, xi}).vec - xi).norm() == 0.0);
  }
  std::vector<Point> pts;
  Vector mean = Vector::Zero(2);
  for (int i = 0; i < 9; ++i) {
    pts.push_back(sample());
    mean += pts.back() / 9.0;
  }
  CHECK((m.barycentre(pts) - mean).norm() < 1e-14);
}

TEST_CASE("closed-form mappings are straight lines in phi-coordinates") {
  for (const char* name : {"river", "spiral", "banana", "sinh_shift"}) {
    CAPTURE(name);
    PullbackManifold m = named(name);
    const auto& phi = m.diffeo();
    testing::PointSampler sample(m, 5);
    for (int i = 0; i < 25; ++i) {
      const Point x = sample();
      const Point y = sample();
      const Vector px = phi.forward(x);
      const Vector py = phi.forward(y);
      CHECK(m.distance(x, y) == doctest::Approx((px - py).norm()).epsilon(1e-13));
      CHECK(m.distance(x, y) == doctest::Approx(m.distance(y, x)));
      const double t = sample.uniform(0.05, 0.95);
      const Point g = m.geodesic(x, y, t);
      CHECK((phi.forward(g) - ((1 - t) * px + t * py)).norm() <
            1e-9 * (1 + px.norm() + py.norm()));
      CHECK(m.geodesic(x, y, 0.0) == x);
      CHECK(m.geodesic(x, y, 1.0) == y);

      // velocity against a central difference of the geodesic
      const double h = 1e-6;
      const Vector fd =
          (m.geodesic(x, y, t + h) - m.geodesic(x, y, t - h)) / (2 * h);
      const Vector vel = m.geodesic_velocity(x, y, t).vec;
      CHECK((vel - fd).norm() < 1e-5 * (1 + vel.norm()));

      const TangentVector lg = m.log(x, y);
      CHECK((m.exp(lg) - y).norm() < 1e-9 * (1 + y.norm()));
      CHECK((phi.jvp(x, lg.vec) - (py - px)).norm() < 1e-9 * (1 + (py - px).norm()));

      // transport there and back is the identity
      const Vector xi = sample.normal_vector(m.dim());
      const TangentVector there = m.transport(x, y, {x, xi});
      CHECK(there.base == y);
      const TangentVector back = m.transport(y, x, there);
      CHECK((back.vec - xi).norm() < 1e-9 * (1 + xi.norm()));
    }
  }
}

TEST_CASE("closed-form barycentre is the phi-mean") {
  PullbackManifold m = named("river");
  testing::PointSampler sample(m, 9);
  std::vector<Point> pts;
  Vector mean = Vector::Zero(2);
  for (int i = 0; i < 20; ++i) {
    pts.push_back(sample());
    mean += m.to_phi(pts.back()) / 20.0;
  }
  CHECK((m.to_phi(m.barycentre(pts)) - mean).norm() < 1e-12);
  const std::vector<Point> one{pts[3]};
  CHECK(m.barycentre(one) == pts[3]);
  CHECK_THROWS_AS(m.barycentre(std::vector<Point>{}), InputError);
}

TEST_CASE("pullback mappings validate their inputs") {
  PullbackManifold m = named("river");
  const Point x = Point::Zero(2);
  CHECK_THROWS_AS(m.distance(x, Point::Zero(3)), DimensionError);
  CHECK_THROWS_AS(m.exp({x, Vector::Zero(1)}), DimensionError);
  Point bad(2);
  bad << 0.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(m.log(x, bad), InputError);
  CHECK_THROWS_AS(PullbackManifold(nullptr), InputError);

  QuadratureConfig q;
  q.panels = 0;
  CHECK_THROWS_AS(q.validate(), InputError);
  CHECK_THROWS_AS(m.with_quadrature(q), InputError);

  // exp has no inverse at negative values
  PullbackManifold e(std::make_shared<FunctionDiffeo>(
      "exp", 1, [](const Vector& v) { return v.array().exp().matrix().eval(); },
      [](const Vector& v) { return v.array().log().matrix().eval(); }));
  Point a(1), b(1);
  a << 0.0;
  b << 1.0;
  CHECK_THROWS_AS(e.from_phi(Vector::Constant(1, -1.0)), DomainError);
  CHECK_THROWS_AS(e.geodesic(b, a, 3.0), DomainError);
}

TEST_CASE("geodesics extend past the endpoints where the inverse exists") {
  PullbackManifold m = named("sinh_shift");
  Point x(1), y(1);
  x << 0.0;
  y << 2.0;
  const double mid = std::asinh((std::sinh(1.0) + std::sinh(3.0)) / 2) - 1;
  CHECK(m.geodesic(x, y, 0.5)[0] == doctest::Approx(mid).epsilon(1e-14));
  const double ext = std::asinh(-0.5 * std::sinh(1.0) + 1.5 * std::sinh(3.0)) - 1;
  CHECK(m.geodesic(x, y, 1.5)[0] == doctest::Approx(ext).epsilon(1e-14));
}
