#include "isogeo/experiments/runner.hpp"

#include "isogeo/clustering.hpp"
#include "isogeo/diagnostics.hpp"
#include "isogeo/error.hpp"
#include "isogeo/experiments/datasets.hpp"
#include "isogeo/iso_maps.hpp"
#include "isogeo/kernels.hpp"
#include "isogeo/submanifold.hpp"

#include <json.hpp>

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

namespace isogeo::experiments {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

// Collects output files and summary values for one run.
class Outputs {
 public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::ofstream open(const std::string& name) {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    files_.push_back(path);
    return os;
  }

  const std::filesystem::path& dir() const { return dir_; }
  std::vector<std::filesystem::path>& files() { return files_; }
  json summary = json::object();

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> files_;
};

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void write_header(std::ostream& os, std::initializer_list<std::string> lead,
                  Eigen::Index d, std::string_view prefix = "x") {
  bool first = true;
  for (const auto& c : lead) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    os << (first ? "" : ",") << prefix << (j + 1);
    first = false;
  }
  os << '\n';
}

void write_coords(std::ostream& os, const Vector& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) os << ',' << format_double(v[j]);
}

void write_points(Outputs& out, const std::string& name,
                  std::span<const Point> points) {
  auto os = out.open(name);
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  write_header(os, {}, d);
  for (const Point& p : points) {
    for (Eigen::Index j = 0; j < d; ++j) {
      os << (j ? "," : "") << format_double(p[j]);
    }
    os << '\n';
  }
}

std::string status_of(const SolveResult& r) {
  return std::string(status_name(r.status));
}

std::string run_geodesic(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const GeodesicSection& g = cfg.geodesic;
  require_dim(g.from, m.dim(), "geodesic.from");
  require_dim(g.to, m.dim(), "geodesic.to");
  auto os = out.open("geodesic.csv");
  write_header(os, {"t"}, m.dim());
  for (int i = 0; i < g.samples; ++i) {
    const double t = static_cast<double>(i) / (g.samples - 1);
    const Point p = g.iso ? iso::geodesic(m, g.from, g.to, t)
                          : m.geodesic(g.from, g.to, t);
    os << format_double(t);
    write_coords(os, p);
    os << '\n';
  }
  out.summary["iso"] = g.iso;
  out.summary["lc_distance"] = m.distance(g.from, g.to);
  out.summary["iso_distance"] = iso::distance(m, g.from, g.to);
  return "ok";
}

std::string run_barycentre(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const Dataset ds = generate_dataset(cfg.dataset, m);
  write_points(out, "points.csv", ds.points);
  const SolveResult r = iso_barycentre(m, ds.points, cfg.solver);
  {
    auto os = out.open("trace.csv");
    r.trace.write_csv(os);
  }
  out.summary["closed_form_barycentre"] = to_json(m.barycentre(ds.points));
  out.summary["iso_barycentre"] = to_json(r.point);
  out.summary["iterations"] = r.iterations();
  out.summary["final_field_norm"] = r.trace.field_norms.back();
  out.summary["solver_status"] = status_of(r);
  return r.converged() ? "ok" : status_of(r);
}

std::string run_kmeans(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const Dataset ds = generate_dataset(cfg.dataset, m);
  const KMeansConfig kc{cfg.kmeans.max_iters, cfg.kmeans.movement_tol};
  const int k = cfg.kmeans.k;
  const std::uint64_t seed = cfg.kmeans.seed;

  const ClusteringResult runs[] = {
      iso_kmeans(m, ds.points, k, seed, cfg.solver, kc),
      riemannian_kmeans(m, ds.points, k, seed, kc),
      euclidean_kmeans(ds.points, k, seed, kc)};
  const char* names[] = {"iso", "riemannian", "euclidean"};

  if (!ds.labels.empty()) {
    auto os = out.open("labels_truth.csv");
    write_labels_csv(os, ds.points, ds.labels);
  }
  json methods = json::object();
  for (int i = 0; i < 3; ++i) {
    {
      auto os = out.open(std::string("labels_") + names[i] + ".csv");
      write_labels_csv(os, ds.points, runs[i].labels);
    }
    json entry;
    json centroids = json::array();
    for (const Point& c : runs[i].centroids) centroids.push_back(to_json(c));
    entry["centroids"] = centroids;
    entry["iterations"] = runs[i].iterations;
    entry["converged"] = runs[i].converged;
    if (!ds.labels.empty()) {
      entry["ari"] = adjusted_rand_index(runs[i].labels, ds.labels);
    }
    methods[names[i]] = entry;
  }
  out.summary["methods"] = methods;
  return runs[0].converged ? "ok" : "max_iterations";
}

struct InverseProblem {
  GeodesicSubmanifold manifold;
  Objective objective;
  Matrix a;
  Vector b;
};

GeodesicSubmanifold banana_line(const PullbackManifold& m, double offset) {
  if (m.dim() != 2) {
    throw ConfigError("inverse: needs a 2-dimensional geometry");
  }
  Vector base_phi(2);
  base_phi << offset, 0.0;
  Matrix dir(2, 1);
  dir << 0.0, 1.0;
  return GeodesicSubmanifold(m, m.from_phi(base_phi), dir);
}

Point line_point(const GeodesicSubmanifold& s, double coord) {
  Vector c(1);
  c << coord;
  return s.point_at(c);
}

InverseProblem make_inverse(const ExperimentConfig& cfg,
                            const PullbackManifold& m, double offset) {
  const InverseSection& inv = cfg.inverse;
  GeodesicSubmanifold s = banana_line(m, offset);
  Matrix a;
  Vector b;
  if (inv.identity_objective) {
    a = Matrix::Identity(2, 2);
    b = Vector::Zero(2);
  } else {
    std::mt19937_64 rng(inv.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    a.resize(inv.rows, 2);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) a(i, j) = normal(rng);
    }
    const double truth = std::uniform_real_distribution<double>(
        0.5 * inv.s_min, 0.5 * inv.s_max)(rng);
    b = a * line_point(s, truth);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] += inv.noise * normal(rng);
  }
  Objective f = least_squares_objective(a, b);
  return {std::move(s), std::move(f), std::move(a), std::move(b)};
}

std::string run_inverse(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const InverseSection& inv = cfg.inverse;
  const InverseProblem p = make_inverse(cfg, m, inv.offset);

  const SolveResult r =
      l2pg_ird(p.manifold, p.objective, line_point(p.manifold, inv.start),
               cfg.solver);
  {
    auto os = out.open("trace.csv");
    r.trace.write_csv(os);
  }

  // Grid oracle over the submanifold coordinate.
  const double cell = (inv.s_max - inv.s_min) / (inv.grid_points - 1);
  double best_s = inv.s_min;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < inv.grid_points; ++i) {
    const double s = inv.s_min + cell * i;
    const double f = p.objective.value(line_point(p.manifold, s));
    if (f < best_f) {
      best_f = f;
      best_s = s;
    }
  }
  const double solver_s = p.manifold.coordinates(r.point)[0];

  json a = json::array();
  for (Eigen::Index i = 0; i < p.a.rows(); ++i) {
    a.push_back(to_json(p.a.row(i).transpose()));
  }
  out.summary["A"] = a;
  out.summary["b"] = to_json(p.b);
  out.summary["solver_point"] = to_json(r.point);
  out.summary["solver_coordinate"] = solver_s;
  out.summary["solver_objective"] = p.objective.value(r.point);
  out.summary["grid_coordinate"] = best_s;
  out.summary["grid_objective"] = best_f;
  out.summary["grid_cell"] = cell;
  out.summary["cells_apart"] = std::abs(solver_s - best_s) / cell;
  out.summary["iterations"] = r.iterations();
  out.summary["solver_status"] = status_of(r);

  if (!inv.convexity_offsets.empty()) {
    auto os = out.open("convexity.csv");
    os << "offset,t,s,x1,x2,hess,curvature,sum\n";
    std::vector<double> ts(inv.convexity_samples);
    for (int i = 0; i < inv.convexity_samples; ++i) {
      ts[i] = inv.convexity_samples == 1
                  ? 0.5
                  : static_cast<double>(i) / (inv.convexity_samples - 1);
    }
    json mins = json::array();
    for (double offset : inv.convexity_offsets) {
      const InverseProblem q = make_inverse(cfg, m, offset);
      const Point x = line_point(q.manifold, inv.s_min);
      const Point y = line_point(q.manifold, inv.s_max);
      const auto terms = convexity_bounds_1d(q.manifold, q.objective, x, y, ts);
      double lowest = std::numeric_limits<double>::infinity();
      for (const ConvexityTerms& c : terms) {
        const Point g = m.geodesic(x, y, c.t);
        os << format_double(offset) << ',' << format_double(c.t) << ','
           << format_double(q.manifold.coordinates(g)[0]);
        write_coords(os, g);
        os << ',' << format_double(c.hess) << ',' << format_double(c.curvature)
           << ',' << format_double(c.sum()) << '\n';
        lowest = std::min(lowest, c.sum());
      }
      mins.push_back({{"offset", offset}, {"min_sum", lowest}});
    }
    out.summary["convexity"] = mins;
  }
  return r.converged() ? "ok" : status_of(r);
}

std::string run_ratios(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const Dataset ds = generate_dataset(cfg.dataset, m);
  write_points(out, "points.csv", ds.points);
  const SolveResult bary = iso_barycentre(m, ds.points, cfg.solver);
  const Point& xbar = bary.point;
  const BarycentreFieldForm form = cfg.ratios.plain_log
                                       ? BarycentreFieldForm::PlainLog
                                       : BarycentreFieldForm::IsoLog;
  const RatiosSection& g = cfg.ratios;
  const Eigen::Index d = m.dim();
  if (d > 2) throw ConfigError("ratios: needs a 1- or 2-dimensional geometry");

  auto os = out.open("ratios.csv");
  os << (d == 1 ? "x1" : "x1,x2") << ",monotonicity,lipschitz\n";
  auto lin = [](double lo, double hi, int i, int n) {
    return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };
  const int ny = d == 1 ? 1 : g.ny;
  // Grid points this close to xbar are skipped.
  const double near = 1e-6 * (1.0 + xbar.norm());
  int skipped = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Point x(d);
      x[0] = lin(g.x1_min, g.x1_max, i, g.nx);
      if (d == 2) x[1] = lin(g.x2_min, g.x2_max, j, g.ny);
      try {
        if (iso::distance(m, x, xbar) < near) {
          ++skipped;
          continue;
        }
        const Vector field = barycentre_ratio_field(m, x, ds.points, form);
        const double mono = iso_monotonicity_ratio(m, x, xbar, field);
        const double lip = iso_lipschitz_ratio(m, x, xbar, field);
        for (Eigen::Index k = 0; k < d; ++k) {
          os << (k ? "," : "") << format_double(x[k]);
        }
        os << ',' << format_double(mono) << ',' << format_double(lip) << '\n';
        lo = std::min(lo, mono);
        hi = std::max(hi, mono);
      } catch (const DegenerateError&) {
        ++skipped;
      } catch (const DomainError&) {
        ++skipped;
      }
    }
  }
  out.summary["iso_barycentre"] = to_json(xbar);
  out.summary["barycentre_status"] = status_of(bary);
  out.summary["field"] = cfg.ratios.plain_log ? "plain_log" : "iso_log";
  out.summary["monotonicity_min"] = lo;
  out.summary["monotonicity_max"] = hi;
  out.summary["skipped"] = skipped;
  return "ok";
}

std::string run_rankr(const ExperimentConfig& cfg, Outputs& out) {
  const PullbackManifold m = make_manifold(cfg);
  const Dataset ds = generate_dataset(cfg.dataset, m);
  write_points(out, "points.csv", ds.points);
  const Point base = cfg.rankr.base ? *cfg.rankr.base : m.barycentre(ds.points);
  require_dim(base, m.dim(), "rankr.base");
  const RankApprox ra =
      iso_rank_r_decomposition(m, ds.points, base, cfg.rankr.r);
  {
    auto os = out.open("singular_values.csv");
    os << "index,value\n";
    for (Eigen::Index i = 0; i < ra.singular_values.size(); ++i) {
      os << (i + 1) << ',' << format_double(ra.singular_values[i]) << '\n';
    }
  }
  {
    auto os = out.open("basis.csv");
    os << "row";
    for (Eigen::Index j = 0; j < ra.basis.cols(); ++j) os << ",u" << (j + 1);
    os << '\n';
    for (Eigen::Index i = 0; i < ra.basis.rows(); ++i) {
      os << (i + 1);
      for (Eigen::Index j = 0; j < ra.basis.cols(); ++j) {
        os << ',' << format_double(ra.basis(i, j));
      }
      os << '\n';
    }
  }
  {
    // Each point mapped back from its iso-log projected onto the basis.
    auto os = out.open("reconstruction.csv");
    write_header(os, {}, m.dim());
    const Matrix proj = ra.basis * (ra.basis.transpose() * ra.iso_logs);
    for (Eigen::Index i = 0; i < proj.cols(); ++i) {
      const Point p = iso::exp(m, {base, proj.col(i)});
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        os << (j ? "," : "") << format_double(p[j]);
      }
      os << '\n';
    }
  }
  out.summary["base"] = to_json(base);
  out.summary["r"] = cfg.rankr.r;
  return "ok";
}

std::string compiler_id() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunResult run(const ExperimentConfig& cfg) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  std::unique_ptr<Outputs> out;
  try {
    out = std::make_unique<Outputs>(cfg.output_dir);
    std::string status;
    if (cfg.experiment == "geodesic") {
      status = run_geodesic(cfg, *out);
    } else if (cfg.experiment == "barycentre") {
      status = run_barycentre(cfg, *out);
    } else if (cfg.experiment == "kmeans") {
      status = run_kmeans(cfg, *out);
    } else if (cfg.experiment == "inverse") {
      status = run_inverse(cfg, *out);
    } else if (cfg.experiment == "ratios") {
      status = run_ratios(cfg, *out);
    } else if (cfg.experiment == "rankr") {
      status = run_rankr(cfg, *out);
    } else {
      throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    result.status = status;
    result.exit_code = status == "ok" ? 0 : 2;
  } catch (const std::exception& e) {
    result.status = "error";
    result.message = e.what();
    result.exit_code = 1;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!out) {
    try {
      std::filesystem::create_directories(cfg.output_dir);
    } catch (const std::exception&) {
      return result;
    }
  }

  json manifest;
  manifest["experiment"] = cfg.experiment;
  manifest["status"] = result.status;
  if (!result.message.empty()) manifest["message"] = result.message;
  manifest["exit_code"] = result.exit_code;
  manifest["geometry"] = {{"name", cfg.geometry.name},
                          {"params", cfg.geometry.params}};
  manifest["dataset"] = {{"kind", dataset_kind_name(cfg.dataset.kind)},
                         {"n", cfg.dataset.n},
                         {"seed", cfg.dataset.seed},
                         {"noise_sigma", cfg.dataset.noise_sigma}};
  manifest["config"] = cfg.source_text;
  manifest["versions"] = {
      {"isogeo", kVersion},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", compiler_id()},
      {"simd", std::string(kernels::isa_name(kernels::active_isa()))}};
  manifest["wall_time_s"] = wall;
  json files = json::array();
  if (out) {
    manifest["summary"] = out->summary;
    for (const auto& f : out->files()) files.push_back(f.filename().string());
    result.files = out->files();
  }
  manifest["files"] = files;

  const auto path = cfg.output_dir / "manifest.json";
  std::ofstream os(path, std::ios::binary);
  os << manifest.dump(2) << '\n';
  result.files.push_back(path);
  return result;
}

}  // namespace isogeo::experiments
