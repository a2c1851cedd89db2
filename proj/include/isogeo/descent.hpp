#pragma once

#include "isogeo/pullback.hpp"
#include "isogeo/types.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace isogeo {

/// Backtracking parameters shared by the barycentre and projected-gradient
/// solvers.
struct LineSearchConfig {
  double r0 = 1.0;
  double c = 0.5;
  int max_backtracks = 50;
  int max_iters = 500;
  double tol = 1e-2;

  void validate() const;
};

/// One row per accepted iterate. Row 0 is the initial point and carries step
/// size 0; row k > 0 carries the step that produced iterate k.
struct ConvergenceTrace {
  std::vector<Point> iterates;
  std::vector<double> field_norms;
  std::vector<double> step_sizes;
  std::optional<std::vector<double>> objectives;

  std::size_t size() const { return iterates.size(); }
  void push(Point x, double field_norm, double step,
            std::optional<double> objective = std::nullopt);

  /// Columns: iter, field_norm, step_size, objective, x1..xd. The objective
  /// column is empty when no objective is tracked. Floats use 17 significant
  /// digits.
  void write_csv(std::ostream& os) const;
};

enum class SolverStatus { Converged, MaxIterations, Stalled };

std::string_view status_name(SolverStatus s);

struct SolveResult {
  Point point;  // last accepted iterate; the best one seen for these solvers
  ConvergenceTrace trace;
  SolverStatus status = SolverStatus::MaxIterations;

  bool converged() const { return status == SolverStatus::Converged; }
  bool stalled() const { return status == SolverStatus::Stalled; }
  int iterations() const { return static_cast<int>(trace.size()) - 1; }
};

/// A tangent vector field on R^d, returned as its vector part at x.
using VectorField = std::function<Vector(const Point&)>;

/// One iso-Riemannian descent step: iso-exp_x(-r v).
Point ird_step(const PullbackManifold& m, const TangentVector& v, double r);

/// Fixed-step iso-Riemannian descent on a field. Stops once |field|_2 < tol or
/// after max_iters steps.
SolveResult fixed_step_ird(const PullbackManifold& m, const VectorField& field,
                           const Point& x0, double r, int max_iters,
                           double tol);

/// -(1/N) sum_i iso-log_x(x_i); zero exactly at an iso-barycentre.
TangentVector iso_barycentre_field(const PullbackManifold& m, const Point& x,
                                   std::span<const Point> points);

/// Iso-barycentre by descent with backtracking, started from the closed-form
/// barycentre. A trial step is accepted only if it strictly decreases the
/// field norm; otherwise r <- c r. The step restarts at r0 every iteration.
/// Exhausting max_backtracks returns the current iterate with status Stalled.
SolveResult iso_barycentre(const PullbackManifold& m,
                           std::span<const Point> points,
                           const LineSearchConfig& cfg);

/// Same as iso_barycentre but from a caller-chosen starting point.
SolveResult iso_barycentre_from(const PullbackManifold& m,
                                std::span<const Point> points, const Point& x0,
                                const LineSearchConfig& cfg);

}  // namespace isogeo
