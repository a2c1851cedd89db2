#include "isogeo/error.hpp"
#include "isogeo/experiments/config.hpp"
#include "isogeo/experiments/runner.hpp"
#include "isogeo/iso_maps.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace ex = isogeo::experiments;

namespace {

constexpr int kUsageError = 64;

int cmd_run(const std::string& path) {
  ex::ExperimentConfig cfg;
  try {
    cfg = ex::parse_config(path);
  } catch (const isogeo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  const ex::RunResult r = ex::run(cfg);
  for (const auto& f : r.files) std::cout << f.string() << '\n';
  if (r.exit_code != 0) {
    std::cerr << cfg.experiment << ": " << r.status;
    if (!r.message.empty()) std::cerr << ": " << r.message;
    std::cerr << '\n';
  }
  return r.exit_code;
}

int cmd_validate(const std::string& path) {
  try {
    const ex::ExperimentConfig cfg = ex::parse_config(path);
    std::cout << path << ": ok (" << cfg.experiment << " on "
              << cfg.geometry.name << ")\n";
    return 0;
  } catch (const isogeo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

struct GeodesicArgs {
  std::string geometry = "river";
  std::optional<double> beta, eta, a, z, dim;
  std::string from, to;
  int samples = 100;
  bool iso = false;
};

int cmd_geodesic(const GeodesicArgs& g) {
  isogeo::ParamMap params;
  if (g.beta) params["beta"] = *g.beta;
  if (g.eta) params["eta"] = *g.eta;
  if (g.a) params["a"] = *g.a;
  if (g.z) params["z"] = *g.z;
  if (g.dim) params["dim"] = *g.dim;
  try {
    const isogeo::PullbackManifold m(
        isogeo::make_diffeomorphism(g.geometry, params));
    const isogeo::Point x = ex::parse_point(g.from);
    const isogeo::Point y = ex::parse_point(g.to);
    isogeo::require_dim(x, m.dim(), "--from");
    isogeo::require_dim(y, m.dim(), "--to");
    std::cout << "t";
    for (Eigen::Index j = 0; j < m.dim(); ++j) std::cout << ",x" << (j + 1);
    std::cout << '\n';
    for (int i = 0; i < g.samples; ++i) {
      const double t = static_cast<double>(i) / (g.samples - 1);
      const isogeo::Point p = g.iso ? isogeo::iso::geodesic(m, x, y, t)
                                    : m.geodesic(x, y, t);
      std::cout << ex::format_double(t);
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        std::cout << ',' << ex::format_double(p[j]);
      }
      std::cout << '\n';
    }
    return 0;
  } catch (const isogeo::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const isogeo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometrized pullback geometry experiments"};
  app.require_subcommand(1);

  std::string run_path;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", run_path, "Config file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  GeodesicArgs g;
  auto* geo = app.add_subcommand("geodesic", "Sample a geodesic as CSV");
  geo->add_option("--geometry", g.geometry, "Registered diffeomorphism")
      ->capture_default_str();
  geo->add_option("--beta", g.beta);
  geo->add_option("--eta", g.eta);
  geo->add_option("--a", g.a);
  geo->add_option("--z", g.z);
  geo->add_option("--dim", g.dim);
  geo->add_option("--from", g.from, "Start point, comma separated")->required();
  geo->add_option("--to", g.to, "End point, comma separated")->required();
  geo->add_option("--samples", g.samples)
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  geo->add_flag("--iso", g.iso, "Constant-speed parameterization");

  CLI11_PARSE(app, argc, argv);

  if (*run) return cmd_run(run_path);
  if (*validate) return cmd_validate(validate_path);
  return cmd_geodesic(g);
}
