#include "isogeo/iso_maps.hpp"

#include "isogeo/error.hpp"
#include "isogeo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isogeo::iso {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guess, then map
  // [-1, 1] onto [0, 1].
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

namespace {

// Straight segment a + s * delta, s in [0, 1], in phi-coordinates.
class Segment {
 public:
  Segment(const PullbackManifold& m, Vector a, Vector b)
      : phi_(m.diffeo()),
        quad_(m.quadrature()),
        rule_(gauss_legendre(quad_.nodes_per_panel)),
        a_(std::move(a)),
        delta_(b - a_) {
    const auto n = rule_.nodes.size();
    rows_.resize(n * static_cast<std::size_t>(a_.size()));
    scaled_w_.resize(n);
  }

  bool degenerate() const { return delta_.isZero(0.0); }

  // Bisection tolerance in s: refine_tol measured along the phi-segment.
  double parameter_tol() const {
    return quad_.refine_tol / std::max(1.0, delta_.norm());
  }
  const QuadratureConfig& quad() const { return quad_; }

  // Arc length over [s0, s1] with one Gauss-Legendre panel.
  double panel(double s0, double s1) {
    const std::size_t d = static_cast<std::size_t>(a_.size());
    const double width = s1 - s0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      const double s = s0 + width * rule_.nodes[i];
      const Vector v = phi_.inv_jvp(a_ + s * delta_, delta_);
      std::copy(v.data(), v.data() + d, rows_.data() + i * d);
      scaled_w_[i] = width * rule_.weights[i];
    }
    return kernels::weighted_norm_sum(rows_, scaled_w_, d);
  }

  double total() {
    if (degenerate()) return 0.0;
    double sum = 0.0;
    walk([&](double, double len) { sum += len; });
    return sum;
  }

  ArcLengthTable table() {
    ArcLengthTable out;
    out.knots.push_back(0.0);
    out.cumlen.push_back(0.0);
    if (degenerate()) {
      const int k = quad_.panels;
      for (int j = 1; j <= k; ++j) {
        out.knots.push_back(static_cast<double>(j) / k);
        out.cumlen.push_back(0.0);
      }
    } else {
      walk([&](double s1, double len) {
        out.knots.push_back(s1);
        out.cumlen.push_back(out.cumlen.back() + len);
      });
    }
    out.knots.back() = 1.0;
    out.total = out.cumlen.back();
    return out;
  }

  // Visits accepted panels left to right as (right end, length). Each of the
  // uniform panels is compared against its two halves and split until they
  // agree to split_tol times the segment length times the panel width, or
  // max_split_depth is reached.
  template <typename Emit>
  void walk(Emit&& emit) {
    const int k = quad_.panels;
    std::vector<double> coarse(k);
    double estimate = 0.0;
    for (int j = 0; j < k; ++j) {
      coarse[j] = panel(static_cast<double>(j) / k, static_cast<double>(j + 1) / k);
      estimate += coarse[j];
    }
    const double budget = quad_.split_tol * estimate;
    for (int j = 0; j < k; ++j) {
      refine(static_cast<double>(j) / k, static_cast<double>(j + 1) / k,
             coarse[j], 0, budget, emit);
    }
  }

  template <typename Emit>
  void refine(double s0, double s1, double coarse, int depth, double budget,
              Emit& emit) {
    if (depth >= quad_.max_split_depth) {
      emit(s1, coarse);
      return;
    }
    const double mid = 0.5 * (s0 + s1);
    const double left = panel(s0, mid);
    const double right = panel(mid, s1);
    const double fine = left + right;
    if (std::abs(fine - coarse) <= budget * (s1 - s0)) {
      emit(mid, left);
      emit(s1, right);
      return;
    }
    refine(s0, mid, left, depth + 1, budget, emit);
    refine(mid, s1, right, depth + 1, budget, emit);
  }

  // Parameter s with cumulative length `target`: locate the panel, take the
  // linear interpolant as first cut, bisect to `tol`, then interpolate
  // linearly inside the final bracket.
  double invert(const ArcLengthTable& table, double target, double tol) {
    if (target <= 0.0) return 0.0;
    if (target >= table.total) return 1.0;
    const auto it =
        std::upper_bound(table.cumlen.begin(), table.cumlen.end(), target);
    const auto k = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(it - table.cumlen.begin() - 1, 0));
    const double start = table.knots[k];
    const double base = table.cumlen[k];
    double lo = start;
    double hi = table.knots[k + 1];
    double len_lo = base;
    double len_hi = table.cumlen[k + 1];
    auto split = [&](double s) {
      const double len = base + panel(start, s);
      if (len < target) {
        lo = s;
        len_lo = len;
      } else {
        hi = s;
        len_hi = len;
      }
    };
    if (len_hi > len_lo) {
      const double guess = lo + (hi - lo) * (target - len_lo) / (len_hi - len_lo);
      if (guess > lo && guess < hi) split(guess);
    }
    while (hi - lo > tol) split(0.5 * (lo + hi));
    if (!(len_hi > len_lo)) return 0.5 * (lo + hi);
    const double s = lo + (hi - lo) * (target - len_lo) / (len_hi - len_lo);
    return std::clamp(s, lo, hi);
  }

 private:
  const Diffeomorphism& phi_;
  QuadratureConfig quad_;
  GaussLegendreRule rule_;
  Vector a_;
  Vector delta_;
  std::vector<double> rows_;
  std::vector<double> scaled_w_;
};

}  // namespace

ArcLengthTable arc_length_table(const PullbackManifold& m, const Point& x,
                                const Point& y) {
  Segment seg(m, m.to_phi(x), m.to_phi(y));
  return seg.table();
}

ArcLengthTable arc_length_table(const PullbackManifold& m, const Point& x,
                                const Point& y, const QuadratureConfig& quad) {
  return arc_length_table(m.with_quadrature(quad), x, y);
}

double segment_length(const PullbackManifold& m, const Vector& a,
                      const Vector& b) {
  Segment seg(m, a, b);
  return seg.total();
}

double distance(const PullbackManifold& m, const Point& x, const Point& y) {
  return segment_length(m, m.to_phi(x), m.to_phi(y));
}

double timechange(const PullbackManifold& m, const Point& x, const Point& y,
                  double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InputError("timechange: t must lie in [0, 1]");
  }
  Segment seg(m, m.to_phi(x), m.to_phi(y));
  if (seg.degenerate()) {
    throw DegenerateError("timechange: endpoints coincide");
  }
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const ArcLengthTable table = seg.table();
  return seg.invert(table, t * table.total, seg.parameter_tol());
}

Point geodesic(const PullbackManifold& m, const Point& x, const Point& y,
               double t) {
  return m.geodesic(x, y, timechange(m, x, y, t));
}

namespace {

// Returns (t', a + t' w) for the exponential segment.
std::pair<double, Vector> solve_vectorchange(const PullbackManifold& m,
                                             const TangentVector& xi) {
  const Vector a = m.to_phi(xi.base);
  require_dim(xi.vec, m.dim(), "vectorchange");
  require_finite(xi.vec, "vectorchange");
  const double target = xi.vec.norm();
  if (target == 0.0) return {0.0, a};

  const Vector w = m.diffeo().jvp(xi.base, xi.vec);
  const QuadratureConfig& quad = m.quadrature();
  double scale = 1.0;
  double length = segment_length(m, a, a + w);
  int doublings = 0;
  while (length < target) {
    if (++doublings > quad.max_bracket_doublings) {
      throw NonConvergenceError(
          "vectorchange: arc length bracket not found after " +
          std::to_string(quad.max_bracket_doublings) + " doublings");
    }
    scale *= 2.0;
    length = segment_length(m, a, a + scale * w);
  }
  Segment seg(m, a, a + scale * w);
  const ArcLengthTable table = seg.table();
  const double u = seg.invert(table, target, seg.parameter_tol());
  const double tp = u * scale;
  return {tp, a + tp * w};
}

}  // namespace

double vectorchange(const PullbackManifold& m, const TangentVector& xi) {
  return solve_vectorchange(m, xi).first;
}

Point exp(const PullbackManifold& m, const TangentVector& xi) {
  auto [tp, p] = solve_vectorchange(m, xi);
  if (tp == 0.0) return xi.base;
  return m.from_phi(p);
}

TangentVector log(const PullbackManifold& m, const Point& x, const Point& y) {
  const Vector a = m.to_phi(x);
  const Vector b = m.to_phi(y);
  const Vector delta = b - a;
  if (delta.isZero(0.0)) return {x, Vector::Zero(m.dim())};
  Vector lc = m.diffeo().inv_jvp(a, delta);
  const double lc_norm = lc.norm();
  const double length = segment_length(m, a, b);
  return {x, (length / lc_norm) * lc};
}

TangentVector transport(const PullbackManifold& m, const Point& x,
                        const Point& y, const TangentVector& xi) {
  const Vector a = m.to_phi(x);
  const Vector b = m.to_phi(y);
  require_dim(xi.vec, m.dim(), "transport");
  require_finite(xi.vec, "transport");
  const Vector delta = b - a;
  if (delta.isZero(0.0)) return {y, xi.vec};
  const Diffeomorphism& phi = m.diffeo();
  const double forward_norm = phi.inv_jvp(a, delta).norm();
  const double backward_norm = phi.inv_jvp(b, -delta).norm();
  Vector moved = phi.inv_jvp(b, phi.jvp(x, xi.vec));
  return {y, (forward_norm / backward_norm) * moved};
}

namespace {

template <typename Curve>
std::vector<SpeedSample> sample_speeds(Curve&& curve, int n_samples) {
  if (n_samples < 1) throw InputError("speed_profile: need n_samples >= 1");
  std::vector<SpeedSample> out;
  out.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i + 1) / (n_samples + 1);
    const double h = std::min(1e-4, 0.5 * std::min(t, 1.0 - t));
    const Point fwd = curve(t + h);
    const Point bwd = curve(t - h);
    out.push_back({t, (fwd - bwd).norm() / (2.0 * h)});
  }
  return out;
}

}  // namespace

std::vector<SpeedSample> speed_profile(const PullbackManifold& m,
                                       const Point& x, const Point& y,
                                       int n_samples) {
  if ((m.to_phi(x) - m.to_phi(y)).isZero(0.0)) {
    return sample_speeds([&](double) { return x; }, n_samples);
  }
  return sample_speeds([&](double t) { return geodesic(m, x, y, t); },
                       n_samples);
}

std::vector<SpeedSample> lc_speed_profile(const PullbackManifold& m,
                                          const Point& x, const Point& y,
                                          int n_samples) {
  return sample_speeds([&](double t) { return m.geodesic(x, y, t); },
                       n_samples);
}

}  // namespace isogeo::iso
