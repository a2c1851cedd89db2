#pragma once

#include "isogeo/diffeomorphism.hpp"
#include "isogeo/types.hpp"

#include <memory>
#include <span>

namespace isogeo {

/// Numerical settings for arc-length integrals and the scalar solves built on
/// them.
struct QuadratureConfig {
  int panels = 64;
  int nodes_per_panel = 4;       // Gauss-Legendre nodes per panel
  double refine_tol = 1e-10;     // bisection tolerance in the curve parameter
  int max_bracket_doublings = 60;
  // Each panel is halved while it and its halves differ by more than
  // split_tol times the segment length times the panel width;
  // max_split_depth 0 keeps the uniform panels.
  double split_tol = 1e-12;
  int max_split_depth = 20;

  void validate() const;
};

/// R^d with the Euclidean metric pulled back through a diffeomorphism.
///
/// Member functions are the closed-form Levi-Civita mappings; the isometrized
/// mappings live in isogeo::iso and take a manifold as their first argument.
/// Instances are immutable and safe to share between threads.
class PullbackManifold {
 public:
  explicit PullbackManifold(std::shared_ptr<const Diffeomorphism> diffeo,
                            QuadratureConfig quad = {});

  Eigen::Index dim() const { return diffeo_->dim(); }
  const Diffeomorphism& diffeo() const { return *diffeo_; }
  std::shared_ptr<const Diffeomorphism> diffeo_ptr() const { return diffeo_; }
  const QuadratureConfig& quadrature() const { return quad_; }
  PullbackManifold with_quadrature(QuadratureConfig quad) const;

  /// phi(x) after dimension and finiteness checks.
  Vector to_phi(const Point& x) const;
  /// phi^{-1}(p); DomainError if the result is not finite.
  Point from_phi(const Vector& p) const;

  /// |phi(x) - phi(y)|_2
  double distance(const Point& x, const Point& y) const;
  /// phi^{-1}((1 - t) phi(x) + t phi(y))
  Point geodesic(const Point& x, const Point& y, double t) const;
  /// Time derivative of geodesic(x, y, .) at t.
  TangentVector geodesic_velocity(const Point& x, const Point& y,
                                  double t) const;
  /// phi^{-1}(phi(x) + D_x phi[xi])
  Point exp(const TangentVector& xi) const;
  /// D_{phi(x)} phi^{-1}[phi(y) - phi(x)]
  TangentVector log(const Point& x, const Point& y) const;
  /// D_{phi(y)} phi^{-1}[D_x phi[xi]], the parallel transport from x to y.
  TangentVector transport(const Point& x, const Point& y,
                          const TangentVector& xi) const;
  /// phi^{-1}(mean of phi(x_i)), the minimizer of the summed squared distances.
  Point barycentre(std::span<const Point> points) const;

 private:
  void check_point(const Vector& x, std::string_view what) const;
  void check_tangent(const TangentVector& xi, std::string_view what) const;

  std::shared_ptr<const Diffeomorphism> diffeo_;
  QuadratureConfig quad_;
};

}  // namespace isogeo
