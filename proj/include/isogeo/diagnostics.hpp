#pragma once

// Pointwise estimates of iso-monotonicity and iso-Lipschitz constants, the
// manifold restricted-isometry ratio, and the two terms that decide
// iso-convexity of a projected gradient field on a 1D geodesic submanifold.

#include "isogeo/pullback.hpp"
#include "isogeo/submanifold.hpp"
#include "isogeo/types.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isogeo {

/// Which log map fills the barycentre field in the ratio diagnostics.
/// IsoLog:   -(1/N) sum iso-log_x(x_i), the field whose zero is the
///           iso-barycentre (ratio 1 on every 1D pullback).
/// PlainLog: -(1/N) sum log_x(x_i) with the Levi-Civita log.
enum class BarycentreFieldForm { IsoLog, PlainLog };

Vector barycentre_ratio_field(const PullbackManifold& m, const Point& x,
                              std::span<const Point> points,
                              BarycentreFieldForm form = BarycentreFieldForm::IsoLog);

/// <F(x), P^iso_{x<-xbar} iso-log_xbar(x)>_2 / d_iso(xbar, x)^2 for a field F
/// that vanishes at xbar. DegenerateError when x and xbar coincide.
double iso_monotonicity_ratio(const PullbackManifold& m, const Point& x,
                              const Point& xbar, const Vector& field_at_x);

/// |F(x)|_2 / d_iso(xbar, x).
double iso_lipschitz_ratio(const PullbackManifold& m, const Point& x,
                           const Point& xbar, const Vector& field_at_x);

/// Extremes of |A iso-log_x(y)|^2 / d_iso(x, y)^2 over a set of pairs,
/// reported as (min - 1, max - 1). Coincident pairs are skipped.
struct RestrictedIsometryWitness {
  double lower = 0.0;  // min ratio - 1
  double upper = 0.0;  // max ratio - 1
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

RestrictedIsometryWitness restricted_isometry_check(
    const PullbackManifold& m, const Matrix& a,
    std::span<const std::pair<Point, Point>> pairs);

/// Terms along gamma = lc-geodesic(x, y, t):
///   hess      = D^2 f[gamma', gamma'] / |gamma'|^2
///   curvature = <(I - P) grad f, gamma''> / |gamma'|^2
/// gamma'' is a central difference (h = 1e-4) of the geodesic velocity.
struct ConvexityTerms {
  double t;
  double hess;
  double curvature;
  double sum() const { return hess + curvature; }
};

std::vector<ConvexityTerms> convexity_bounds_1d(const GeodesicSubmanifold& s,
                                                const Objective& f,
                                                const Point& x, const Point& y,
                                                std::span<const double> t_grid);

}  // namespace isogeo
