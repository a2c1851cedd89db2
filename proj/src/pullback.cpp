#include "isogeo/pullback.hpp"

#include "isogeo/error.hpp"
#include "isogeo/kernels.hpp"

#include <cmath>

namespace isogeo {

void QuadratureConfig::validate() const {
  if (panels < 1) throw InputError("quadrature: panels must be >= 1");
  if (nodes_per_panel < 1) {
    throw InputError("quadrature: nodes_per_panel must be >= 1");
  }
  if (!(refine_tol > 0.0)) throw InputError("quadrature: refine_tol must be > 0");
  if (max_bracket_doublings < 1) {
    throw InputError("quadrature: max_bracket_doublings must be >= 1");
  }
  if (!(split_tol >= 0.0)) throw InputError("quadrature: split_tol must be >= 0");
  if (max_split_depth < 0) {
    throw InputError("quadrature: max_split_depth must be >= 0");
  }
}

PullbackManifold::PullbackManifold(std::shared_ptr<const Diffeomorphism> diffeo,
                                   QuadratureConfig quad)
    : diffeo_(std::move(diffeo)), quad_(quad) {
  if (!diffeo_) throw InputError("pullback manifold needs a diffeomorphism");
  quad_.validate();
}

PullbackManifold PullbackManifold::with_quadrature(QuadratureConfig quad) const {
  return PullbackManifold(diffeo_, quad);
}

void PullbackManifold::check_point(const Vector& x, std::string_view what) const {
  require_dim(x, dim(), what);
  require_finite(x, what);
}

void PullbackManifold::check_tangent(const TangentVector& xi,
                                     std::string_view what) const {
  check_point(xi.base, what);
  require_dim(xi.vec, dim(), what);
  require_finite(xi.vec, what);
}

Vector PullbackManifold::to_phi(const Point& x) const {
  check_point(x, "point");
  return diffeo_->forward(x);
}

Point PullbackManifold::from_phi(const Vector& p) const {
  Point x = diffeo_->inverse(p);
  if (!x.allFinite()) {
    throw DomainError(std::string(diffeo_->name()) +
                      ": inverse undefined at the requested coordinate");
  }
  return x;
}

double PullbackManifold::distance(const Point& x, const Point& y) const {
  const Vector px = to_phi(x);
  const Vector py = to_phi(y);
  return std::sqrt(kernels::squared_distance(px, py));
}

Point PullbackManifold::geodesic(const Point& x, const Point& y,
                                 double t) const {
  if (t == 0.0) {
    check_point(x, "geodesic start");
    check_point(y, "geodesic end");
    return x;
  }
  if (t == 1.0) {
    check_point(x, "geodesic start");
    check_point(y, "geodesic end");
    return y;
  }
  const Vector px = to_phi(x);
  const Vector py = to_phi(y);
  return from_phi((1.0 - t) * px + t * py);
}

TangentVector PullbackManifold::geodesic_velocity(const Point& x,
                                                  const Point& y,
                                                  double t) const {
  const Vector px = to_phi(x);
  const Vector py = to_phi(y);
  const Vector p = (1.0 - t) * px + t * py;
  Point base = t == 0.0 ? x : (t == 1.0 ? y : from_phi(p));
  return {std::move(base), diffeo_->inv_jvp(p, py - px)};
}

Point PullbackManifold::exp(const TangentVector& xi) const {
  check_tangent(xi, "exp");
  const Vector p = diffeo_->forward(xi.base);
  return from_phi(p + diffeo_->jvp(xi.base, xi.vec));
}

TangentVector PullbackManifold::log(const Point& x, const Point& y) const {
  const Vector px = to_phi(x);
  const Vector py = to_phi(y);
  return {x, diffeo_->inv_jvp(px, py - px)};
}

TangentVector PullbackManifold::transport(const Point& x, const Point& y,
                                          const TangentVector& xi) const {
  check_tangent(xi, "transport");
  const Vector py = to_phi(y);
  (void)to_phi(x);
  return {y, diffeo_->inv_jvp(py, diffeo_->jvp(x, xi.vec))};
}

Point PullbackManifold::barycentre(std::span<const Point> points) const {
  if (points.empty()) throw InputError("barycentre of an empty point set");
  if (points.size() == 1) {
    check_point(points.front(), "barycentre");
    return points.front();
  }
  Vector mean = Vector::Zero(dim());
  for (const Point& x : points) mean += to_phi(x);
  mean /= static_cast<double>(points.size());
  return from_phi(mean);
}

}  // namespace isogeo
