#include "isogeo/descent.hpp"

#include "isogeo/error.hpp"
#include "isogeo/iso_maps.hpp"

#include <cstdio>
#include <ostream>

namespace isogeo {

void LineSearchConfig::validate() const {
  if (!(r0 > 0.0)) throw InputError("line search: r0 must be > 0");
  if (!(c > 0.0 && c < 1.0)) throw InputError("line search: c must lie in (0, 1)");
  if (max_backtracks < 1) throw InputError("line search: max_backtracks must be >= 1");
  if (max_iters < 1) throw InputError("line search: max_iters must be >= 1");
  if (!(tol > 0.0)) throw InputError("line search: tol must be > 0");
}

void ConvergenceTrace::push(Point x, double field_norm, double step,
                            std::optional<double> objective) {
  iterates.push_back(std::move(x));
  field_norms.push_back(field_norm);
  step_sizes.push_back(step);
  if (objective) {
    if (!objectives) objectives.emplace();
    objectives->push_back(*objective);
  }
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void ConvergenceTrace::write_csv(std::ostream& os) const {
  const Eigen::Index d = iterates.empty() ? 0 : iterates.front().size();
  os << "iter,field_norm,step_size,objective";
  for (Eigen::Index j = 0; j < d; ++j) os << ",x" << (j + 1);
  os << '\n';
  for (std::size_t k = 0; k < iterates.size(); ++k) {
    os << k << ',';
    put(os, field_norms[k]);
    os << ',';
    put(os, step_sizes[k]);
    os << ',';
    if (objectives) put(os, (*objectives)[k]);
    for (Eigen::Index j = 0; j < d; ++j) {
      os << ',';
      put(os, iterates[k][j]);
    }
    os << '\n';
  }
}

std::string_view status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged:
      return "converged";
    case SolverStatus::MaxIterations:
      return "max_iterations";
    case SolverStatus::Stalled:
      return "stalled";
  }
  return "unknown";
}

Point ird_step(const PullbackManifold& m, const TangentVector& v, double r) {
  if (!(r > 0.0)) throw InputError("ird_step: step size must be positive");
  return iso::exp(m, {v.base, -r * v.vec});
}

SolveResult fixed_step_ird(const PullbackManifold& m, const VectorField& field,
                           const Point& x0, double r, int max_iters,
                           double tol) {
  SolveResult out;
  Point x = x0;
  Vector xi = field(x);
  out.trace.push(x, xi.norm(), 0.0);
  for (int k = 0; k < max_iters; ++k) {
    if (xi.norm() < tol) {
      out.status = SolverStatus::Converged;
      break;
    }
    x = ird_step(m, {x, xi}, r);
    xi = field(x);
    out.trace.push(x, xi.norm(), r);
  }
  if (out.status != SolverStatus::Converged && xi.norm() < tol) {
    out.status = SolverStatus::Converged;
  }
  out.point = std::move(x);
  return out;
}

TangentVector iso_barycentre_field(const PullbackManifold& m, const Point& x,
                                   std::span<const Point> points) {
  if (points.empty()) throw InputError("barycentre field of an empty point set");
  Vector sum = Vector::Zero(m.dim());
  for (const Point& p : points) sum += iso::log(m, x, p).vec;
  return {x, -sum / static_cast<double>(points.size())};
}

SolveResult iso_barycentre_from(const PullbackManifold& m,
                                std::span<const Point> points, const Point& x0,
                                const LineSearchConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw InputError("iso-barycentre of an empty point set");

  SolveResult out;
  Point x = x0;
  Vector xi = iso_barycentre_field(m, x, points).vec;
  double norm = xi.norm();
  out.trace.push(x, norm, 0.0);

  for (int k = 0; k < cfg.max_iters && norm >= cfg.tol; ++k) {
    double r = cfg.r0;
    bool accepted = false;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      Point trial = ird_step(m, {x, xi}, r);
      Vector trial_xi = iso_barycentre_field(m, trial, points).vec;
      const double trial_norm = trial_xi.norm();
      if (trial_norm < norm) {
        x = std::move(trial);
        xi = std::move(trial_xi);
        norm = trial_norm;
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
    out.trace.push(x, norm, r);
  }
  out.status = norm < cfg.tol ? SolverStatus::Converged
                              : SolverStatus::MaxIterations;
  out.point = std::move(x);
  return out;
}

SolveResult iso_barycentre(const PullbackManifold& m,
                           std::span<const Point> points,
                           const LineSearchConfig& cfg) {
  if (points.empty()) throw InputError("iso-barycentre of an empty point set");
  return iso_barycentre_from(m, points, m.barycentre(points), cfg);
}

}  // namespace isogeo
