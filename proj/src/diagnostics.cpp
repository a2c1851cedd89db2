#include "isogeo/diagnostics.hpp"

#include "isogeo/descent.hpp"
#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"

#include <algorithm>
#include <limits>

namespace isogeo {

Vector barycentre_ratio_field(const PullbackManifold& m, const Point& x,
                              std::span<const Point> points,
                              BarycentreFieldForm form) {
  if (form == BarycentreFieldForm::IsoLog) {
    return iso_barycentre_field(m, x, points).vec;
  }
  if (points.empty()) throw InputError("barycentre field of an empty point set");
  Vector sum = Vector::Zero(m.dim());
  for (const Point& p : points) sum += m.log(x, p).vec;
  return -sum / static_cast<double>(points.size());
}

namespace {

double checked_iso_distance(const PullbackManifold& m, const Point& x,
                            const Point& xbar) {
  const double d = iso::distance(m, xbar, x);
  if (!(d > 0.0)) {
    throw DegenerateError("ratio undefined: x coincides with the reference point");
  }
  return d;
}

}  // namespace

double iso_monotonicity_ratio(const PullbackManifold& m, const Point& x,
                              const Point& xbar, const Vector& field_at_x) {
  const double d = checked_iso_distance(m, x, xbar);
  const TangentVector log_bar = iso::log(m, xbar, x);
  const TangentVector moved = iso::transport(m, xbar, x, log_bar);
  return field_at_x.dot(moved.vec) / (d * d);
}

double iso_lipschitz_ratio(const PullbackManifold& m, const Point& x,
                           const Point& xbar, const Vector& field_at_x) {
  const double d = checked_iso_distance(m, x, xbar);
  return field_at_x.norm() / d;
}

RestrictedIsometryWitness restricted_isometry_check(
    const PullbackManifold& m, const Matrix& a,
    std::span<const std::pair<Point, Point>> pairs) {
  if (a.cols() != m.dim()) {
    throw DimensionError("restricted isometry: A must have d columns");
  }
  RestrictedIsometryWitness out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    const double d = iso::distance(m, x, y);
    if (!(d > 0.0)) {
      ++out.skipped;
      out.warnings.push_back("pair " + std::to_string(i) +
                             " skipped: coincident points");
      continue;
    }
    const Vector image = a * iso::log(m, x, y).vec;
    const double ratio = image.squaredNorm() / (d * d);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ++out.evaluated;
  }
  if (out.evaluated == 0) {
    throw InputError("restricted isometry: no non-coincident pairs");
  }
  out.lower = lo - 1.0;
  out.upper = hi - 1.0;
  return out;
}

std::vector<ConvexityTerms> convexity_bounds_1d(const GeodesicSubmanifold& s,
                                                const Objective& f,
                                                const Point& x, const Point& y,
                                                std::span<const double> t_grid) {
  if (s.dim() != 1) {
    throw InputError("convexity bounds need a one-dimensional submanifold");
  }
  if (!f.gradient) throw InputError("convexity bounds need a gradient");
  const PullbackManifold& m = s.manifold();
  constexpr double h = 1e-4;

  auto hessian_vector = [&](const Point& p, const Vector& v) -> Vector {
    if (f.hessian_vector) return f.hessian_vector(p, v);
    const double eps = 1e-5 * (1.0 + p.norm()) / std::max(v.norm(), 1e-300);
    return (f.gradient(p + eps * v) - f.gradient(p - eps * v)) / (2.0 * eps);
  };

  std::vector<ConvexityTerms> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const TangentVector vel = m.geodesic_velocity(x, y, t);
    const Vector accel = (m.geodesic_velocity(x, y, t + h).vec -
                          m.geodesic_velocity(x, y, t - h).vec) /
                         (2.0 * h);
    const Point& p = vel.base;
    const double speed2 = vel.vec.squaredNorm();
    const Vector grad = f.gradient(p);
    const Vector normal = grad - s.project(p, grad).vec;
    ConvexityTerms row;
    row.t = t;
    row.hess = vel.vec.dot(hessian_vector(p, vel.vec)) / speed2;
    row.curvature = normal.dot(accel) / speed2;
    out.push_back(row);
  }
  return out;
}

}  // namespace isogeo
