#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dpht {

// Flat key=value run configuration shared by the CLI subcommands. Unknown
// keys are rejected with a line diagnostic.
struct RunConfig {
  // loop parameters
  std::vector<std::string> candidates;  // comma-separated in the file
  int k = 10;
  double g = 0.01;
  double u0 = 0.0;

  // privacy
  double eps = 1.0;
  double eps0 = 0.1;
  double delta = 1e-5;
  double delta_slack = 1e-6;

  // data / trainer
  std::string trainer = "reference";  // reference | synthetic
  std::string train_path;
  std::string valid_path;

  // simulation
  std::size_t n_seeds = 1000;
  std::size_t n_candidates = 100;
  std::string utility_distribution = "uniform01";  // uniform01 | constant
  double constant_value = 0.0;
  std::vector<long> ratios = {10, 20, 50, 100, 200, 500, 1000};

  // run control
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  static RunConfig load(const std::string& path);
  static RunConfig parse(const std::string& text, const std::string& origin);
};

}  // namespace dpht
