#include "isogeo/diffeomorphism.hpp"

#include "isogeo/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace isogeo {

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw InputError(std::string(what) + ": non-finite coordinate");
  }
}

void require_dim(const Vector& v, Eigen::Index dim, std::string_view what) {
  if (v.size() != dim) {
    std::ostringstream os;
    os << what << ": expected dimension " << dim << ", got " << v.size();
    throw DimensionError(os.str());
  }
}

Vector finite_difference_jvp(const std::function<Vector(const Vector&)>& map,
                             const Vector& at, const Vector& dir) {
  const double h = 1e-6 * (1.0 + at.norm());
  return (map(at + h * dir) - map(at - h * dir)) / (2.0 * h);
}

void Diffeomorphism::check_dim(const Vector& v, std::string_view what) const {
  std::string label(name());
  label += ' ';
  label += what;
  require_dim(v, dim(), label);
}

Vector Diffeomorphism::jvp(const Point& x, const Vector& v) const {
  return finite_difference_jvp([this](const Vector& p) { return forward(p); },
                               x, v);
}

Vector Diffeomorphism::inv_jvp(const Vector& p, const Vector& w) const {
  return finite_difference_jvp([this](const Vector& q) { return inverse(q); },
                               p, w);
}

// identity

IdentityDiffeo::IdentityDiffeo(Eigen::Index dim) : dim_(dim) {
  if (dim < 1) throw InputError("identity: dimension must be positive");
}

Vector IdentityDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  return x;
}
Point IdentityDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  return p;
}
Vector IdentityDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  return v;
}
Vector IdentityDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  return w;
}

// river

RiverDiffeo::RiverDiffeo(double beta, double eta) : beta_(beta), eta_(eta) {
  if (!(beta > 0.0) || !(eta > 0.0)) {
    throw InputError("river: beta and eta must be positive");
  }
}

Vector RiverDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  return Vector{{x[0] - beta_ * std::sin(x[1]), std::sinh(eta_ * x[1])}};
}

Point RiverDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  const double u = std::asinh(p[1]) / eta_;
  return Point{{p[0] + beta_ * std::sin(u), u}};
}

Vector RiverDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  return Vector{{v[0] - beta_ * std::cos(x[1]) * v[1],
                 eta_ * std::cosh(eta_ * x[1]) * v[1]}};
}

Vector RiverDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  const double u = std::asinh(p[1]) / eta_;
  const double du = 1.0 / (eta_ * std::sqrt(1.0 + p[1] * p[1]));
  return Vector{{w[0] + beta_ * std::cos(u) * du * w[1], du * w[1]}};
}

// spiral

SpiralDiffeo::SpiralDiffeo(double beta) : beta_(beta) {
  if (!(beta > 0.0)) throw InputError("spiral: beta must be positive");
}

Vector SpiralDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  const double radius = std::hypot(x[0], x[1]);
  if (radius == 0.0) throw DomainError("spiral: angle undefined at the origin");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double r = radius / beta_;
  double theta = std::fmod(std::atan2(x[1], x[0]) - r, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta -= two_pi;
  return Vector{{r, theta}};
}

Point SpiralDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  const double angle = p[0] + p[1];
  return Point{{beta_ * p[0] * std::cos(angle), beta_ * p[0] * std::sin(angle)}};
}

Vector SpiralDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw DomainError("spiral: Jacobian undefined at the origin");
  const double radius = std::sqrt(r2);
  const double dr = (x[0] * v[0] + x[1] * v[1]) / (beta_ * radius);
  const double dangle = (x[0] * v[1] - x[1] * v[0]) / r2;
  return Vector{{dr, dangle - dr}};
}

Vector SpiralDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  const double angle = p[0] + p[1];
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double r = p[0];
  // d/dr of beta r (cos, sin)(r + theta) and d/dtheta of the same.
  return Vector{{beta_ * ((c - r * s) * w[0] - r * s * w[1]),
                 beta_ * ((s + r * c) * w[0] + r * c * w[1])}};
}

// banana

BananaDiffeo::BananaDiffeo(double a, double z) : a_(a), z_(z) {
  if (!std::isfinite(a) || !std::isfinite(z)) {
    throw InputError("banana: parameters must be finite");
  }
}

Vector BananaDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  return Vector{{x[0] - a_ * x[1] * x[1] - z_, x[1]}};
}

Point BananaDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  return Point{{p[0] + a_ * p[1] * p[1] + z_, p[1]}};
}

Vector BananaDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  return Vector{{v[0] - 2.0 * a_ * x[1] * v[1], v[1]}};
}

Vector BananaDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  return Vector{{w[0] + 2.0 * a_ * p[1] * w[1], w[1]}};
}

// sinh(x + 1)

Vector SinhShiftDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  return Vector::Constant(1, std::sinh(x[0] + 1.0));
}

Point SinhShiftDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  return Point::Constant(1, std::asinh(p[0]) - 1.0);
}

Vector SinhShiftDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  return Vector::Constant(1, std::cosh(x[0] + 1.0) * v[0]);
}

Vector SinhShiftDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  return Vector::Constant(1, w[0] / std::sqrt(1.0 + p[0] * p[0]));
}

// user-supplied

FunctionDiffeo::FunctionDiffeo(std::string name, Eigen::Index dim, Map forward,
                               Map inverse, JacobianAction jvp,
                               JacobianAction inv_jvp)
    : name_(std::move(name)),
      dim_(dim),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      jvp_(std::move(jvp)),
      inv_jvp_(std::move(inv_jvp)) {
  if (dim < 1) throw InputError(name_ + ": dimension must be positive");
  if (!forward_ || !inverse_) {
    throw InputError(name_ + ": forward and inverse maps are required");
  }
}

Vector FunctionDiffeo::forward(const Point& x) const {
  check_dim(x, "forward");
  return forward_(x);
}

Point FunctionDiffeo::inverse(const Vector& p) const {
  check_dim(p, "inverse");
  return inverse_(p);
}

Vector FunctionDiffeo::jvp(const Point& x, const Vector& v) const {
  check_dim(x, "jvp");
  if (jvp_) return jvp_(x, v);
  return finite_difference_jvp(forward_, x, v);
}

Vector FunctionDiffeo::inv_jvp(const Vector& p, const Vector& w) const {
  check_dim(p, "inv_jvp");
  if (inv_jvp_) return inv_jvp_(p, w);
  return finite_difference_jvp(inverse_, p, w);
}

}  // namespace isogeo
