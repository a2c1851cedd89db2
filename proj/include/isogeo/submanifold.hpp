#pragma once

#include "isogeo/descent.hpp"
#include "isogeo/pullback.hpp"
#include "isogeo/types.hpp"

#include <functional>
#include <span>

namespace isogeo {

/// phi^{-1}(phi(base) + span(phi_basis)): a geodesic submanifold of a pullback
/// manifold, stored as an affine subspace in phi-coordinates.
class GeodesicSubmanifold {
 public:
  /// phi_basis must have orthonormal columns to 1e-10.
  GeodesicSubmanifold(PullbackManifold manifold, Point base, Matrix phi_basis);

  /// Builds the submanifold through `base` tangent to span(tangent_basis):
  /// the columns are pushed through D_base phi and orthonormalized.
  static GeodesicSubmanifold from_tangent_basis(PullbackManifold manifold,
                                                Point base,
                                                const Matrix& tangent_basis);

  const PullbackManifold& manifold() const { return manifold_; }
  const Point& base() const { return base_; }
  const Matrix& phi_basis() const { return phi_basis_; }
  Eigen::Index dim() const { return phi_basis_.cols(); }

  /// Distance in phi-coordinates from phi(x) to the affine subspace.
  double membership_residual(const Point& x) const;
  bool contains(const Point& x, double tol = 1e-8) const;

  /// Coordinates of phi(x) - phi(base) in phi_basis.
  Vector coordinates(const Point& x) const;
  /// phi^{-1}(phi(base) + phi_basis * coords)
  Point point_at(const Vector& coords) const;

  /// U_x: the phi_basis columns transported to x, i.e. D_{phi(x)} phi^{-1}
  /// applied column by column.
  Matrix tangent_basis(const Point& x) const;

  /// l2-orthogonal projection of v onto T_x S, U (U^T U)^{-1} U^T v.
  /// DegenerateError if U^T U is numerically singular.
  TangentVector project(const Point& x, const Vector& v) const;

 private:
  PullbackManifold manifold_;
  Point base_;
  Vector base_phi_;
  Matrix phi_basis_;
};

/// A smooth objective on R^d. hessian_vector may be left empty; callers then
/// finite-difference the gradient.
struct Objective {
  std::function<double(const Point&)> value;
  std::function<Vector(const Point&)> gradient;
  std::function<Vector(const Point&, const Vector&)> hessian_vector;
};

/// f(x) = 0.5 |A x - b|_2^2
Objective least_squares_objective(Matrix a, Vector b);

/// l2-projected gradient iso-Riemannian descent with backtracking.
///
/// xi = P_x grad f(x); trial = iso-exp_x(-r xi); a trial is accepted iff it
/// strictly decreases f, otherwise r <- c r. Stops when
/// |xi|_2 / f(x0) < cfg.tol. Traces record |xi|_2 and f.
SolveResult l2pg_ird(const GeodesicSubmanifold& s, const Objective& f,
                     const Point& x0, const LineSearchConfig& cfg);

/// Top-r left singular vectors of [iso-log_base(x_1) ... iso-log_base(x_N)].
struct RankApprox {
  Matrix basis;            // d x r, orthonormal columns
  Vector singular_values;  // all min(d, N) singular values, descending
  Matrix iso_logs;         // d x N
};

RankApprox iso_rank_r_decomposition(const PullbackManifold& m,
                                    std::span<const Point> points,
                                    const Point& base, int r);

Matrix iso_rank_r_approx(const PullbackManifold& m,
                         std::span<const Point> points, const Point& base,
                         int r);

}  // namespace isogeo
