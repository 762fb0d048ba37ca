#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dpht/tuner.hpp"

namespace dpht {

enum class UtilityDistribution { kUniform01, kFixedTable, kConstant };

struct SimulationSpec {
  std::size_t n_candidates = 100;
  UtilityDistribution distribution = UtilityDistribution::kUniform01;
  std::vector<double> fixed_table;  // used by kFixedTable
  double constant_value = 0.0;      // used by kConstant
  int k = 10;
  double g = 0.01;
  double u0 = 0.0;
  double eps0 = 0.1;
  std::size_t n_seeds = 1000;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct SimulatedRun {
  std::uint64_t seed;
  TuningOutcome outcome;
};

// One tuning run per derived seed, each on a fresh utility table drawn from
// the configured distribution; every run starts at (u, step) = (u0, 1).
std::vector<SimulatedRun> simulate_traces(const SimulationSpec& spec);

double utility_cap_fraction(const std::vector<SimulatedRun>& runs);

// Noise-free reference trace driven by the adversarial alternating
// accept/reject schedule; produces the zig-zag step-u path.
TuningOutcome worst_case_trace(double g, double u0);

struct SweepSpec {
  // Values of (u* - u0)/g, realized by fixing u* = 1, u0 = 0, g = 1/ratio.
  std::vector<long> ratios = {10, 20, 50, 100, 200, 500, 1000};
  std::size_t n_seeds = 200;
  std::size_t n_candidates = 100;
  int k = 10;
  double eps0 = 0.1;
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct SweepRow {
  long ratio;
  double mean_iterations;
  long max_iterations;
  double std_iterations;
  std::size_t n_seeds;
};

std::vector<SweepRow> sweep_iterations(const SweepSpec& spec);

struct DpCheckResult {
  struct Bucket {
    std::string outcome;  // candidate index, or "none"
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    bool included = false;
    double abs_log_ratio = 0.0;
  };
  double eps_hat = 0.0;
  std::vector<Bucket> buckets;
  std::size_t excluded_buckets = 0;
};

// Monte-Carlo distinguishability probe: runs the loop's first iteration
// n_trials times on each of two datasets, histograms the discrete outcome
// (accepted candidate or none) and reports the largest absolute log
// frequency ratio over buckets with at least 100 hits on both sides.
DpCheckResult dp_distinguishability_check(const Dataset& data,
                                          const Dataset& neighbor,
                                          const Dataset& valid,
                                          const TuningConfig& config,
                                          std::size_t n_trials,
                                          std::uint64_t seed);

// Header: ratio,mean_T,max_T,std_T,n_seeds
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Rows of (seed, iter, u, step), one per trace point.
void write_step_u_csv(std::ostream& out, const std::vector<SimulatedRun>& runs);

}  // namespace dpht
