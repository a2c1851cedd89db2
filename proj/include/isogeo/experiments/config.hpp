#pragma once

// Experiment configuration, read from an INI-style file:
//
//   [geometry]   name = river, plus any diffeomorphism parameters
//   [experiment] name = geodesic | barycentre | kmeans | inverse | ratios | rankr
//   [dataset]    kind, n, seed, noise_sigma and kind-specific keys
//   [solver]     r0, c, max_backtracks, max_iters, tol
//   [quadrature] panels, nodes_per_panel, refine_tol, max_bracket_doublings,
//                split_tol, max_split_depth
//   [output]     dir
//
// and one optional section named after the experiment.

#include "isogeo/descent.hpp"
#include "isogeo/diffeomorphism.hpp"
#include "isogeo/pullback.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace isogeo::experiments {

struct GeometrySpec {
  std::string name = "river";
  ParamMap params;
};

enum class DatasetKind { RiverBand, SpiralBand, TwoClusters, Grid, CustomPoints };

std::string_view dataset_kind_name(DatasetKind k);

struct DatasetSpec {
  DatasetKind kind = DatasetKind::RiverBand;
  int n = 100;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  // Bands: phi[axis] = t with t uniform in [t_min, t_max]; the other
  // phi-coordinates sit at `offset` plus Gaussian noise.
  std::optional<int> axis;
  std::optional<double> offset;
  std::optional<double> t_min;
  std::optional<double> t_max;
  // two_clusters: the two parameter ranges.
  double a_min = -27.0, a_max = -6.0;
  double b_min = -0.5, b_max = 1.2;
  // grid: nx * ny points on a box; ny is ignored in one dimension.
  double x1_min = -1.0, x1_max = 1.0, x2_min = -1.0, x2_max = 1.0;
  int nx = 11, ny = 11;
  // custom_points
  std::vector<Point> points;
};

struct GeodesicSection {
  Point from;
  Point to;
  int samples = 100;
  bool iso = true;
};

struct KMeansSection {
  int k = 2;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double movement_tol = 1e-4;
};

// Banana-constrained least squares: minimize 0.5|A x - b|^2 over the geodesic
// submanifold {phi_1 = offset} with phi-direction (0, 1).
struct InverseSection {
  int rows = 2;
  std::uint64_t seed = 0;
  double noise = 0.0;
  double offset = 1.0;
  double start = 2.0;  // submanifold coordinate of the starting point
  double s_min = -10.0;
  double s_max = 10.0;
  int grid_points = 100000;
  // Offsets for the convexity sign diagnostic with f = 0.5|x|^2.
  std::vector<double> convexity_offsets;
  int convexity_samples = 201;
  bool identity_objective = false;  // A = I, b = 0 instead of seeded A, b
};

struct RatiosSection {
  double x1_min = -2.0, x1_max = 2.0, x2_min = -2.0, x2_max = 2.0;
  int nx = 41, ny = 41;
  bool plain_log = false;
};

struct RankrSection {
  int r = 1;
  std::optional<Point> base;  // closed-form barycentre when absent
};

struct ExperimentConfig {
  GeometrySpec geometry;
  std::string experiment;
  DatasetSpec dataset;
  LineSearchConfig solver;
  QuadratureConfig quadrature;
  std::filesystem::path output_dir = "out";
  GeodesicSection geodesic;
  KMeansSection kmeans;
  InverseSection inverse;
  RatiosSection ratios;
  RankrSection rankr;
  std::string source_text;  // echoed into the run manifest
};

/// Throws ConfigError with the offending line or section.key on malformed
/// input. ISOGEO_OUTPUT_DIR, when set, replaces [output] dir.
ExperimentConfig parse_config(const std::filesystem::path& file);
ExperimentConfig parse_config_string(const std::string& text,
                                     const std::string& origin = "<string>");

/// Builds the pullback manifold the config names.
PullbackManifold make_manifold(const ExperimentConfig& cfg);

/// Parses "1.5,-2" into a point.
Point parse_point(const std::string& text);

}  // namespace isogeo::experiments
