#pragma once

#include "isogeo/experiments/config.hpp"
#include "isogeo/pullback.hpp"

#include <vector>

namespace isogeo::experiments {

struct Dataset {
  std::vector<Point> points;
  std::vector<int> labels;  // ground truth, 0-based; empty when unknown
};

/// Deterministic under spec.seed. Bands and clusters are drawn in
/// phi-coordinates and mapped through phi^{-1}.
Dataset generate_dataset(const DatasetSpec& spec, const PullbackManifold& m);

/// Default band layout per kind: (axis, offset, t_min, t_max).
struct BandLayout {
  int axis;
  double offset;
  double t_min;
  double t_max;
};
BandLayout band_layout(const DatasetSpec& spec, Eigen::Index dim);

}  // namespace isogeo::experiments
