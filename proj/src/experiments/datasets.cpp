#include "isogeo/experiments/datasets.hpp"

#include "isogeo/error.hpp"

#include <numbers>
#include <random>

namespace isogeo::experiments {
namespace {

// One band: phi[axis] = t ~ U[t_min, t_max], other phi-coordinates at
// offset + N(0, sigma^2).
void draw_band(const PullbackManifold& m, const BandLayout& band, double t_min,
               double t_max, double sigma, int count, int label,
               std::mt19937_64& rng, Dataset& out) {
  const Eigen::Index d = m.dim();
  std::uniform_real_distribution<double> param(t_min, t_max);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    Vector p = Vector::Constant(d, band.offset);
    p[band.axis] = param(rng);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j == band.axis) continue;
      // Draw unconditionally so the stream does not depend on sigma.
      const double e = noise(rng);
      p[j] += sigma * e;
    }
    out.points.push_back(m.from_phi(p));
    out.labels.push_back(label);
  }
}

}  // namespace

BandLayout band_layout(const DatasetSpec& spec, Eigen::Index dim) {
  BandLayout b{0, 0.0, -6.0, 6.0};
  switch (spec.kind) {
    case DatasetKind::RiverBand:
    case DatasetKind::TwoClusters:
      b = {dim > 1 ? 1 : 0, 0.0, -6.0, 6.0};
      break;
    case DatasetKind::SpiralBand:
      b = {0, std::numbers::pi, 2.0, 20.0};
      break;
    default:
      break;
  }
  if (spec.axis) b.axis = *spec.axis;
  if (spec.offset) b.offset = *spec.offset;
  if (spec.t_min) b.t_min = *spec.t_min;
  if (spec.t_max) b.t_max = *spec.t_max;
  if (b.axis < 0 || b.axis >= dim) {
    throw ConfigError("dataset: band axis out of range for this geometry");
  }
  if (!(b.t_min <= b.t_max)) throw ConfigError("dataset: t_min exceeds t_max");
  return b;
}

Dataset generate_dataset(const DatasetSpec& spec, const PullbackManifold& m) {
  if (spec.n < 1) throw ConfigError("dataset: n must be at least 1");
  if (spec.noise_sigma < 0.0) throw ConfigError("dataset: noise_sigma < 0");
  Dataset out;
  std::mt19937_64 rng(spec.seed);
  const Eigen::Index d = m.dim();

  switch (spec.kind) {
    case DatasetKind::RiverBand:
    case DatasetKind::SpiralBand: {
      const BandLayout band = band_layout(spec, d);
      draw_band(m, band, band.t_min, band.t_max, spec.noise_sigma, spec.n, 0,
                rng, out);
      out.labels.clear();
      break;
    }
    case DatasetKind::TwoClusters: {
      const BandLayout band = band_layout(spec, d);
      const int first = (spec.n + 1) / 2;
      draw_band(m, band, spec.a_min, spec.a_max, spec.noise_sigma, first, 0,
                rng, out);
      draw_band(m, band, spec.b_min, spec.b_max, spec.noise_sigma,
                spec.n - first, 1, rng, out);
      break;
    }
    case DatasetKind::Grid: {
      auto lin = [](double lo, double hi, int i, int n) {
        return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
      };
      if (d == 1) {
        for (int i = 0; i < spec.nx; ++i) {
          Point p(1);
          p << lin(spec.x1_min, spec.x1_max, i, spec.nx);
          out.points.push_back(p);
        }
      } else if (d == 2) {
        for (int j = 0; j < spec.ny; ++j) {
          for (int i = 0; i < spec.nx; ++i) {
            Point p(2);
            p << lin(spec.x1_min, spec.x1_max, i, spec.nx),
                lin(spec.x2_min, spec.x2_max, j, spec.ny);
            out.points.push_back(p);
          }
        }
      } else {
        throw ConfigError("dataset: grid needs a 1- or 2-dimensional geometry");
      }
      break;
    }
    case DatasetKind::CustomPoints:
      for (const Point& p : spec.points) {
        require_dim(p, d, "custom point");
        require_finite(p, "custom point");
        out.points.push_back(p);
      }
      break;
  }
  return out;
}

}  // namespace isogeo::experiments
