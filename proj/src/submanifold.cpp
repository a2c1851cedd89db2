#include "isogeo/submanifold.hpp"

#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"

#include <cmath>
#include <limits>

namespace isogeo {

GeodesicSubmanifold::GeodesicSubmanifold(PullbackManifold manifold, Point base,
                                         Matrix phi_basis)
    : manifold_(std::move(manifold)),
      base_(std::move(base)),
      phi_basis_(std::move(phi_basis)) {
  base_phi_ = manifold_.to_phi(base_);
  if (phi_basis_.rows() != manifold_.dim()) {
    throw DimensionError("submanifold basis must have d rows");
  }
  if (phi_basis_.cols() < 1 || phi_basis_.cols() > manifold_.dim()) {
    throw InputError("submanifold basis must have between 1 and d columns");
  }
  const Matrix gram = phi_basis_.transpose() * phi_basis_;
  const double err =
      (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10)) {
    throw InputError("submanifold basis columns are not orthonormal");
  }
}

GeodesicSubmanifold GeodesicSubmanifold::from_tangent_basis(
    PullbackManifold manifold, Point base, const Matrix& tangent_basis) {
  if (tangent_basis.rows() != manifold.dim()) {
    throw DimensionError("tangent basis must have d rows");
  }
  Matrix pushed(tangent_basis.rows(), tangent_basis.cols());
  for (Eigen::Index j = 0; j < tangent_basis.cols(); ++j) {
    pushed.col(j) = manifold.diffeo().jvp(base, tangent_basis.col(j));
  }
  Eigen::HouseholderQR<Matrix> qr(pushed);
  Matrix q = qr.householderQ() *
             Matrix::Identity(pushed.rows(), pushed.cols());
  return GeodesicSubmanifold(std::move(manifold), std::move(base), std::move(q));
}

Vector GeodesicSubmanifold::coordinates(const Point& x) const {
  return phi_basis_.transpose() * (manifold_.to_phi(x) - base_phi_);
}

Point GeodesicSubmanifold::point_at(const Vector& coords) const {
  if (coords.size() != dim()) {
    throw DimensionError("submanifold coordinates have the wrong size");
  }
  return manifold_.from_phi(base_phi_ + phi_basis_ * coords);
}

double GeodesicSubmanifold::membership_residual(const Point& x) const {
  const Vector offset = manifold_.to_phi(x) - base_phi_;
  return (offset - phi_basis_ * (phi_basis_.transpose() * offset)).norm();
}

bool GeodesicSubmanifold::contains(const Point& x, double tol) const {
  return membership_residual(x) <= tol;
}

Matrix GeodesicSubmanifold::tangent_basis(const Point& x) const {
  const Vector p = manifold_.to_phi(x);
  Matrix u(phi_basis_.rows(), phi_basis_.cols());
  for (Eigen::Index j = 0; j < phi_basis_.cols(); ++j) {
    u.col(j) = manifold_.diffeo().inv_jvp(p, phi_basis_.col(j));
  }
  return u;
}

TangentVector GeodesicSubmanifold::project(const Point& x,
                                           const Vector& v) const {
  require_dim(v, manifold_.dim(), "tangent projection");
  const Matrix u = tangent_basis(x);
  const Matrix gram = u.transpose() * u;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success ||
      llt.rcond() < 1e2 * std::numeric_limits<double>::epsilon()) {
    throw DegenerateError("tangent projection: singular Gram matrix");
  }
  return {x, u * llt.solve(u.transpose() * v)};
}

Objective least_squares_objective(Matrix a, Vector b) {
  if (a.rows() != b.size()) {
    throw DimensionError("least squares: A and b have mismatched rows");
  }
  Objective f;
  f.value = [a, b](const Point& x) { return 0.5 * (a * x - b).squaredNorm(); };
  f.gradient = [a, b](const Point& x) -> Vector {
    return a.transpose() * (a * x - b);
  };
  f.hessian_vector = [a](const Point&, const Vector& v) -> Vector {
    return a.transpose() * (a * v);
  };
  return f;
}

SolveResult l2pg_ird(const GeodesicSubmanifold& s, const Objective& f,
                     const Point& x0, const LineSearchConfig& cfg) {
  cfg.validate();
  if (!f.value || !f.gradient) {
    throw InputError("l2pg_ird: objective needs value and gradient");
  }
  const PullbackManifold& m = s.manifold();

  SolveResult out;
  Point x = x0;
  double fx = f.value(x);
  const double f0 = fx;
  Vector xi = s.project(x, f.gradient(x)).vec;
  double norm = xi.norm();
  out.trace.push(x, norm, 0.0, fx);

  auto done = [&] { return f0 <= 0.0 || norm / f0 < cfg.tol; };

  for (int k = 0; k < cfg.max_iters && !done(); ++k) {
    double r = cfg.r0;
    bool accepted = false;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      Point trial = iso::exp(m, {x, -r * xi});
      const double f_trial = f.value(trial);
      if (f_trial < fx) {
        x = std::move(trial);
        fx = f_trial;
        accepted = true;
        break;
      }
      r *= cfg.c;
    }
    if (!accepted) {
      out.status = SolverStatus::Stalled;
      out.point = std::move(x);
      return out;
    }
    xi = s.project(x, f.gradient(x)).vec;
    norm = xi.norm();
    out.trace.push(x, norm, r, fx);
  }
  out.status = done() ? SolverStatus::Converged : SolverStatus::MaxIterations;
  out.point = std::move(x);
  return out;
}

RankApprox iso_rank_r_decomposition(const PullbackManifold& m,
                                    std::span<const Point> points,
                                    const Point& base, int r) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) throw InputError("rank-r approximation of an empty point set");
  if (r < 1 || r > std::min(m.dim(), n)) {
    throw InputError("rank-r approximation: r must lie in [1, min(d, N)]");
  }
  RankApprox out;
  out.iso_logs.resize(m.dim(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.iso_logs.col(i) = iso::log(m, base, points[i]).vec;
  }
  Eigen::BDCSVD<Matrix> svd(out.iso_logs, Eigen::ComputeThinU);
  out.singular_values = svd.singularValues();
  out.basis = svd.matrixU().leftCols(r);
  return out;
}

Matrix iso_rank_r_approx(const PullbackManifold& m,
                         std::span<const Point> points, const Point& base,
                         int r) {
  return iso_rank_r_decomposition(m, points, base, r).basis;
}

}  // namespace isogeo
