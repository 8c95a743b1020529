#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "macropeaks/covariance.hpp"
#include "macropeaks/spectral.hpp"

namespace macropeaks {

// Restricted TOML reader covering the experiment schema: [table] headers,
// key = value lines with strings, numbers, booleans and flat arrays, and
// # comments. JSON configs are accepted as-is.
nlohmann::json parse_toml(const std::string& text);
nlohmann::json load_config_file(const std::filesystem::path& path);

struct ExperimentConfig {
  CorrelationModel model;
  std::optional<EquationSpec> equation;
  double time = 1.0;
  CorrelationGrid grid;

  // d = 1 lattice for the sampled field
  double lattice_min = M_E;
  double lattice_max = std::exp(8.0);
  double lattice_spacing = 1.0;

  std::vector<double> gammas{0.5};
  bool variance_from_equation = false;
  double variance = 1.0;

  std::vector<std::string> estimators{"counting"};
  int shell_lo = 2;
  int shell_hi = 8;
  std::vector<double> rho_values;
  double theta = 0.4;
  double bisect_tolerance = 0.02;

  std::uint64_t seed = 1;
  int replicates = 1;

  std::string output_dir;

  // optional pass/fail targets: either explicit per-gamma values or the
  // vanishing-correlation formula (d - gamma) clamped at 0
  std::optional<std::vector<double>> target_values;
  bool target_formula = false;
  double target_tolerance = 0.15;

  nlohmann::json echo;  // canonical config echo embedded in records
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace macropeaks
