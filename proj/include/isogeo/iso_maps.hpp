#pragma once

// Isometrized manifold mappings on a Euclidean pullback manifold.
//
// Every mapping here reparameterizes the closed-form Levi-Civita mappings so
// that curves are traversed at constant l2-speed. The only numerical
// ingredients are the l2 arc length of a Levi-Civita geodesic (composite
// Gauss-Legendre) and two monotone scalar inversions of that arc length.

#include "isogeo/pullback.hpp"
#include "isogeo/types.hpp"

#include <vector>

namespace isogeo::iso {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Cumulative l2 arc length of a geodesic at panel boundaries.
struct ArcLengthTable {
  std::vector<double> knots;   // 0 = t_0 < ... < t_K = 1
  std::vector<double> cumlen;  // cumlen[0] = 0, nondecreasing
  double total = 0.0;
};

ArcLengthTable arc_length_table(const PullbackManifold& m, const Point& x,
                                const Point& y);
ArcLengthTable arc_length_table(const PullbackManifold& m, const Point& x,
                                const Point& y, const QuadratureConfig& quad);

/// Arc length of the straight segment a -> b in phi-coordinates, measured in
/// ambient l2 after mapping through phi^{-1}.
double segment_length(const PullbackManifold& m, const Vector& a,
                      const Vector& b);

/// l2 arc length of the Levi-Civita geodesic from x to y.
double distance(const PullbackManifold& m, const Point& x, const Point& y);

/// s_{x,y}(t): the geodesic time at which a fraction t of the total arc length
/// has been traversed. DegenerateError when phi(x) = phi(y).
double timechange(const PullbackManifold& m, const Point& x, const Point& y,
                  double t);

/// gamma_{x,y}(s_{x,y}(t)), the constant-speed geodesic.
Point geodesic(const PullbackManifold& m, const Point& x, const Point& y,
               double t);

/// l_x(xi): the scale t' >= 0 at which the Levi-Civita exponential segment
/// x -> exp_x(t' xi) has l2 arc length |xi|_2. Zero for xi = 0.
double vectorchange(const PullbackManifold& m, const TangentVector& xi);

/// exp_x(l_x(xi) xi)
Point exp(const PullbackManifold& m, const TangentVector& xi);

/// Levi-Civita log rescaled to have norm distance(x, y).
TangentVector log(const PullbackManifold& m, const Point& x, const Point& y);

/// Levi-Civita transport scaled by |log_x y|_2 / |log_y x|_2. Identity when
/// x and y coincide in phi-coordinates.
TangentVector transport(const PullbackManifold& m, const Point& x,
                        const Point& y, const TangentVector& xi);

struct SpeedSample {
  double t;
  double speed;
};

/// Central finite-difference l2 speed of the iso-geodesic at n interior times
/// t_i = (i + 1) / (n + 1).
std::vector<SpeedSample> speed_profile(const PullbackManifold& m,
                                       const Point& x, const Point& y,
                                       int n_samples);

/// The same for the Levi-Civita geodesic, for comparison.
std::vector<SpeedSample> lc_speed_profile(const PullbackManifold& m,
                                          const Point& x, const Point& y,
                                          int n_samples);

}  // namespace isogeo::iso
