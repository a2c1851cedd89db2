#include "isogeo/experiments/config.hpp"

#include "isogeo/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace isogeo::experiments {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Reads values out of one parsed file and reports problems with the line the
// key appeared on.
class Reader {
 public:
  Reader(const std::string& text, std::string origin)
      : text_(text), origin_(std::move(origin)) {
    std::istringstream in(text);
    try {
      pt::read_ini(in, tree_);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(origin_ + ":" + std::to_string(e.line()) + ": " +
                        e.message());
    }
    index_lines();
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& msg) const {
    std::string where = origin_;
    const auto it = lines_.find(section + "." + key);
    if (it != lines_.end()) where += ":" + std::to_string(it->second);
    throw ConfigError(where + ": " + section + "." + key + ": " + msg);
  }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    return s && s->find(key) != s->not_found();
  }

  std::optional<std::string> raw(const std::string& section,
                                 const std::string& key) {
    used_.insert(section + "." + key);
    const auto s = tree_.get_child_optional(section);
    if (!s) return std::nullopt;
    const auto it = s->find(key);
    if (it == s->not_found()) return std::nullopt;
    return trim(it->second.data());
  }

  std::string str(const std::string& section, const std::string& key,
                  std::string fallback) {
    auto v = raw(section, key);
    return v ? *v : fallback;
  }

  double real(const std::string& section, const std::string& key,
              double fallback) {
    auto v = raw(section, key);
    if (!v) return fallback;
    return to_real(section, key, *v);
  }

  std::optional<double> opt_real(const std::string& section,
                                 const std::string& key) {
    auto v = raw(section, key);
    if (!v) return std::nullopt;
    return to_real(section, key, *v);
  }

  long long integer(const std::string& section, const std::string& key,
                    long long fallback) {
    auto v = raw(section, key);
    if (!v) return fallback;
    long long out = 0;
    const auto* end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
      fail(section, key, "expected an integer, got '" + *v + "'");
    }
    return out;
  }

  std::uint64_t seed(const std::string& section, const std::string& key,
                     std::uint64_t fallback) {
    auto v = raw(section, key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto* end = v->data() + v->size();
    const auto res = std::from_chars(v->data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
      fail(section, key, "expected a nonnegative integer, got '" + *v + "'");
    }
    return out;
  }

  bool boolean(const std::string& section, const std::string& key,
               bool fallback) {
    auto v = raw(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    fail(section, key, "expected true or false, got '" + *v + "'");
  }

  std::vector<double> reals(const std::string& section,
                            const std::string& key) {
    auto v = raw(section, key);
    std::vector<double> out;
    if (!v || v->empty()) return out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      out.push_back(to_real(section, key, trim(item)));
    }
    return out;
  }

  Point point(const std::string& section, const std::string& key) {
    auto v = raw(section, key);
    if (!v) fail(section, key, "required");
    try {
      return parse_point(*v);
    } catch (const Error& e) {
      fail(section, key, e.what());
    }
  }

  const pt::ptree& tree() const { return tree_; }

  /// Every key present in `section` must have been read.
  void reject_unused(const std::string& section) const {
    const auto s = tree_.get_child_optional(section);
    if (!s) return;
    for (const auto& [key, value] : *s) {
      if (!used_.count(section + "." + key)) fail(section, key, "unknown key");
    }
  }

 private:
  double to_real(const std::string& section, const std::string& key,
                 const std::string& v) const {
    if (v == "pi") return std::numbers::pi;
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
      fail(section, key, "expected a number, got '" + v + "'");
    }
    return out;
  }

  void index_lines() {
    std::istringstream in(text_);
    std::string line;
    std::string section;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      const std::string t = trim(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(std::string_view(t).substr(1, t.size() - 2));
        lines_[section + "."] = no;
        continue;
      }
      const auto eq = t.find('=');
      if (eq != std::string::npos) {
        lines_[section + "." + trim(std::string_view(t).substr(0, eq))] = no;
      }
    }
  }

  std::string text_;
  std::string origin_;
  pt::ptree tree_;
  std::map<std::string, int> lines_;
  std::set<std::string> used_;
};

DatasetKind parse_kind(Reader& r) {
  const std::string k = r.str("dataset", "kind", "river_band");
  if (k == "river_band") return DatasetKind::RiverBand;
  if (k == "spiral_band") return DatasetKind::SpiralBand;
  if (k == "two_clusters") return DatasetKind::TwoClusters;
  if (k == "grid") return DatasetKind::Grid;
  if (k == "custom_points") return DatasetKind::CustomPoints;
  r.fail("dataset", "kind", "unknown dataset kind '" + k + "'");
}

const std::set<std::string> kExperiments = {"geodesic", "barycentre", "kmeans",
                                            "inverse",  "ratios",     "rankr"};

}  // namespace

std::string_view dataset_kind_name(DatasetKind k) {
  switch (k) {
    case DatasetKind::RiverBand: return "river_band";
    case DatasetKind::SpiralBand: return "spiral_band";
    case DatasetKind::TwoClusters: return "two_clusters";
    case DatasetKind::Grid: return "grid";
    case DatasetKind::CustomPoints: return "custom_points";
  }
  return "unknown";
}

Point parse_point(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t == "pi" || t == "-pi") {
      values.push_back(t[0] == '-' ? -std::numbers::pi : std::numbers::pi);
      continue;
    }
    double v = 0.0;
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(t.data(), end, v);
    if (t.empty() || res.ec != std::errc() || res.ptr != end) {
      throw InputError("malformed coordinate list '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw InputError("empty coordinate list");
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

ExperimentConfig parse_config_string(const std::string& text,
                                     const std::string& origin) {
  Reader r(text, origin);
  ExperimentConfig cfg;
  cfg.source_text = text;

  static const std::set<std::string> sections = {
      "geometry", "experiment", "dataset", "solver",  "quadrature", "output",
      "geodesic", "kmeans",     "inverse", "ratios",  "rankr"};
  for (const auto& [name, child] : r.tree()) {
    if (child.empty() && !child.data().empty()) {
      throw ConfigError(origin + ": key '" + name + "' outside any section");
    }
    if (!sections.count(name)) {
      throw ConfigError(origin + ": unknown section [" + name + "]");
    }
  }

  // geometry: every key but `name` is a diffeomorphism parameter.
  cfg.geometry.name = r.str("geometry", "name", "");
  if (cfg.geometry.name.empty()) r.fail("geometry", "name", "required");
  if (const auto g = r.tree().get_child_optional("geometry")) {
    for (const auto& [key, value] : *g) {
      if (key == "name") continue;
      cfg.geometry.params[key] = r.real("geometry", key, 0.0);
    }
  }
  try {
    make_diffeomorphism(cfg.geometry.name, cfg.geometry.params);
  } catch (const InputError& e) {
    r.fail("geometry", "name", e.what());
  }

  cfg.experiment = r.str("experiment", "name", "");
  if (!kExperiments.count(cfg.experiment)) {
    r.fail("experiment", "name",
           cfg.experiment.empty() ? "required"
                                  : "unknown experiment '" + cfg.experiment + "'");
  }

  DatasetSpec& d = cfg.dataset;
  d.kind = parse_kind(r);
  d.n = static_cast<int>(r.integer("dataset", "n", d.n));
  if (d.n < 1) r.fail("dataset", "n", "must be at least 1");
  const bool uses_dataset =
      cfg.experiment != "geodesic" && cfg.experiment != "inverse";
  const bool stochastic =
      d.kind != DatasetKind::Grid && d.kind != DatasetKind::CustomPoints;
  if (stochastic && uses_dataset && !r.has("dataset", "seed")) {
    r.fail("dataset", "seed", "required for a random dataset");
  }
  d.seed = r.seed("dataset", "seed", 0);
  d.noise_sigma = r.real("dataset", "noise_sigma", 0.0);
  if (d.noise_sigma < 0.0) r.fail("dataset", "noise_sigma", "must be >= 0");
  if (r.has("dataset", "axis")) {
    d.axis = static_cast<int>(r.integer("dataset", "axis", 0));
  } else {
    r.raw("dataset", "axis");
  }
  d.offset = r.opt_real("dataset", "offset");
  d.t_min = r.opt_real("dataset", "t_min");
  d.t_max = r.opt_real("dataset", "t_max");
  d.a_min = r.real("dataset", "a_min", d.a_min);
  d.a_max = r.real("dataset", "a_max", d.a_max);
  d.b_min = r.real("dataset", "b_min", d.b_min);
  d.b_max = r.real("dataset", "b_max", d.b_max);
  d.x1_min = r.real("dataset", "x1_min", d.x1_min);
  d.x1_max = r.real("dataset", "x1_max", d.x1_max);
  d.x2_min = r.real("dataset", "x2_min", d.x2_min);
  d.x2_max = r.real("dataset", "x2_max", d.x2_max);
  d.nx = static_cast<int>(r.integer("dataset", "nx", d.nx));
  d.ny = static_cast<int>(r.integer("dataset", "ny", d.ny));
  if (d.nx < 1) r.fail("dataset", "nx", "must be at least 1");
  if (d.ny < 1) r.fail("dataset", "ny", "must be at least 1");
  if (auto pts = r.raw("dataset", "points")) {
    std::stringstream ss(*pts);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (trim(item).empty()) continue;
      try {
        d.points.push_back(parse_point(item));
      } catch (const Error& e) {
        r.fail("dataset", "points", e.what());
      }
    }
  }
  if (d.kind == DatasetKind::CustomPoints && d.points.empty()) {
    r.fail("dataset", "points", "required for custom_points");
  }

  LineSearchConfig& s = cfg.solver;
  s.r0 = r.real("solver", "r0", s.r0);
  s.c = r.real("solver", "c", s.c);
  s.max_backtracks =
      static_cast<int>(r.integer("solver", "max_backtracks", s.max_backtracks));
  s.max_iters = static_cast<int>(r.integer("solver", "max_iters", s.max_iters));
  s.tol = r.real("solver", "tol", s.tol);
  try {
    s.validate();
  } catch (const Error& e) {
    throw ConfigError(origin + ": [solver]: " + e.what());
  }

  QuadratureConfig& q = cfg.quadrature;
  q.panels = static_cast<int>(r.integer("quadrature", "panels", q.panels));
  q.nodes_per_panel = static_cast<int>(
      r.integer("quadrature", "nodes_per_panel", q.nodes_per_panel));
  q.refine_tol = r.real("quadrature", "refine_tol", q.refine_tol);
  q.max_bracket_doublings = static_cast<int>(r.integer(
      "quadrature", "max_bracket_doublings", q.max_bracket_doublings));
  q.split_tol = r.real("quadrature", "split_tol", q.split_tol);
  q.max_split_depth = static_cast<int>(
      r.integer("quadrature", "max_split_depth", q.max_split_depth));
  try {
    q.validate();
  } catch (const Error& e) {
    throw ConfigError(origin + ": [quadrature]: " + e.what());
  }

  cfg.output_dir = r.str("output", "dir", cfg.output_dir.string());
  if (const char* env = std::getenv("ISOGEO_OUTPUT_DIR"); env && *env) {
    cfg.output_dir = env;
  }

  if (cfg.experiment == "geodesic") {
    cfg.geodesic.from = r.point("geodesic", "from");
    cfg.geodesic.to = r.point("geodesic", "to");
  }
  cfg.geodesic.samples =
      static_cast<int>(r.integer("geodesic", "samples", cfg.geodesic.samples));
  if (cfg.geodesic.samples < 2) r.fail("geodesic", "samples", "must be >= 2");
  cfg.geodesic.iso = r.boolean("geodesic", "iso", cfg.geodesic.iso);

  KMeansSection& k = cfg.kmeans;
  k.k = static_cast<int>(r.integer("kmeans", "k", k.k));
  if (k.k < 1) r.fail("kmeans", "k", "must be at least 1");
  k.seed = r.seed("kmeans", "seed", k.seed);
  k.max_iters = static_cast<int>(r.integer("kmeans", "max_iters", k.max_iters));
  k.movement_tol = r.real("kmeans", "movement_tol", k.movement_tol);

  InverseSection& inv = cfg.inverse;
  inv.rows = static_cast<int>(r.integer("inverse", "rows", inv.rows));
  if (inv.rows < 1) r.fail("inverse", "rows", "must be at least 1");
  inv.seed = r.seed("inverse", "seed", inv.seed);
  inv.noise = r.real("inverse", "noise", inv.noise);
  inv.offset = r.real("inverse", "offset", inv.offset);
  inv.start = r.real("inverse", "start", inv.start);
  inv.s_min = r.real("inverse", "s_min", inv.s_min);
  inv.s_max = r.real("inverse", "s_max", inv.s_max);
  if (!(inv.s_min < inv.s_max)) r.fail("inverse", "s_max", "must exceed s_min");
  inv.grid_points =
      static_cast<int>(r.integer("inverse", "grid_points", inv.grid_points));
  if (inv.grid_points < 2) r.fail("inverse", "grid_points", "must be >= 2");
  inv.convexity_offsets = r.reals("inverse", "convexity_offsets");
  inv.convexity_samples = static_cast<int>(
      r.integer("inverse", "convexity_samples", inv.convexity_samples));
  inv.identity_objective =
      r.boolean("inverse", "identity_objective", inv.identity_objective);

  RatiosSection& ra = cfg.ratios;
  ra.x1_min = r.real("ratios", "x1_min", ra.x1_min);
  ra.x1_max = r.real("ratios", "x1_max", ra.x1_max);
  ra.x2_min = r.real("ratios", "x2_min", ra.x2_min);
  ra.x2_max = r.real("ratios", "x2_max", ra.x2_max);
  ra.nx = static_cast<int>(r.integer("ratios", "nx", ra.nx));
  ra.ny = static_cast<int>(r.integer("ratios", "ny", ra.ny));
  if (ra.nx < 1) r.fail("ratios", "nx", "must be at least 1");
  if (ra.ny < 1) r.fail("ratios", "ny", "must be at least 1");
  ra.plain_log = r.boolean("ratios", "plain_log", ra.plain_log);

  cfg.rankr.r = static_cast<int>(r.integer("rankr", "r", cfg.rankr.r));
  if (cfg.rankr.r < 1) r.fail("rankr", "r", "must be at least 1");
  if (r.has("rankr", "base")) {
    cfg.rankr.base = r.point("rankr", "base");
  } else {
    r.raw("rankr", "base");
  }

  for (const char* sec : {"experiment", "dataset", "solver", "quadrature",
                          "output", "geodesic", "kmeans", "inverse", "ratios",
                          "rankr"}) {
    r.reject_unused(sec);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_string(text.str(), file.string());
}

PullbackManifold make_manifold(const ExperimentConfig& cfg) {
  return PullbackManifold(
      make_diffeomorphism(cfg.geometry.name, cfg.geometry.params),
      cfg.quadrature);
}

}  // namespace isogeo::experiments
