#pragma once

#include "isogeo/experiments/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace isogeo::experiments {

struct RunResult {
  int exit_code = 0;
  std::string status;  // "ok", "max_iterations", "stalled", "error"
  std::string message;
  std::vector<std::filesystem::path> files;  // CSVs written, manifest last
};

/// Runs one experiment and writes its CSVs plus manifest.json into
/// cfg.output_dir. Exit code 0 on success, 2 on stall or non-convergence,
/// 1 on any other failure.
RunResult run(const ExperimentConfig& cfg);

/// Fixed 17-significant-digit rendering used by every CSV.
std::string format_double(double v);

}  // namespace isogeo::experiments
