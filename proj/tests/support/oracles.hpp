#pragma once

// Reference computations for the tests. Nothing here calls the quadrature,
// root finding or analytic Jacobians of the library.

#include "isogeo/pullback.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace isogeo::testing {

/// Central-difference Jacobian of a map R^d -> R^d.
template <typename Map>
Matrix fd_jacobian(Map&& f, const Vector& x, double h = 1e-6) {
  const Eigen::Index d = x.size();
  Matrix j(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    Vector e = Vector::Zero(d);
    e[k] = h;
    j.col(k) = (f(x + e) - f(x - e)) / (2.0 * h);
  }
  return j;
}

/// l2 length of t -> phi^{-1}((1-t) a + t b) on [0, u] by composite Simpson
/// over `n` intervals of the norm of a central-difference velocity.
inline double simpson_arc_length(const PullbackManifold& m, const Vector& a,
                                 const Vector& b, double u = 1.0,
                                 int n = 4000) {
  auto curve = [&](double t) {
    return m.diffeo().inverse(((1.0 - t) * a + t * b).eval());
  };
  auto speed = [&](double t) {
    const double h = 1e-6;
    return (curve(t + h) - curve(t - h)).norm() / (2.0 * h);
  };
  const double step = u / n;
  double s = speed(0.0) + speed(u);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * speed(i * step);
  return s * step / 3.0;
}

inline double simpson_distance(const PullbackManifold& m, const Point& x,
                               const Point& y, int n = 4000) {
  return simpson_arc_length(m, m.to_phi(x), m.to_phi(y), 1.0, n);
}

/// Seeded point generator per geometry. Spiral points avoid the branch cut by
/// drawing phi-coordinates with angle in [0.5, 2 pi - 0.5].
class PointSampler {
 public:
  PointSampler(const PullbackManifold& m, std::uint64_t seed)
      : m_(m), rng_(seed) {}

  Point operator()() {
    const Eigen::Index d = m_.dim();
    if (m_.diffeo().name() == "spiral") {
      std::uniform_real_distribution<double> radius(1.0, 12.0);
      std::uniform_real_distribution<double> angle(0.5,
                                                   2 * std::numbers::pi - 0.5);
      Vector p(2);
      p << radius(rng_), angle(rng_);
      return m_.from_phi(p);
    }
    std::normal_distribution<double> normal(0.0, scale());
    Point x(d);
    for (Eigen::Index i = 0; i < d; ++i) x[i] = normal(rng_);
    return x;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Vector normal_vector(Eigen::Index d, double sigma = 1.0) {
    std::normal_distribution<double> normal(0.0, sigma);
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(rng_);
    return v;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  double scale() const {
    const auto name = m_.diffeo().name();
    if (name == "sinh_shift") return 1.0;
    return 2.0;
  }

  const PullbackManifold& m_;
  std::mt19937_64 rng_;
};

}  // namespace isogeo::testing
