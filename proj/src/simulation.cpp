#include "dpht/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace dpht {

void SimulationSpec::validate() const {
  if (n_candidates == 0) throw std::invalid_argument("n_candidates must be positive");
  if (n_seeds == 0) throw std::invalid_argument("n_seeds must be positive");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(g > 0.0) || !(g <= 1.0)) throw std::invalid_argument("g must lie in (0,1]");
  if (!(u0 >= 0.0) || !(u0 < 1.0)) throw std::invalid_argument("u0 must lie in [0,1)");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  if (distribution == UtilityDistribution::kFixedTable &&
      fixed_table.size() != n_candidates)
    throw std::invalid_argument("fixed_table size must equal n_candidates");
  if (distribution == UtilityDistribution::kConstant &&
      (!(constant_value >= 0.0) || !(constant_value <= 1.0)))
    throw std::invalid_argument("constant_value must lie in [0,1]");
}

namespace {

TuningConfig config_from(const SimulationSpec& spec) {
  TuningConfig config;
  config.candidates.resize(spec.n_candidates);  // placeholders, table-driven
  config.k = spec.k;
  config.g = spec.g;
  config.u0 = spec.u0;
  config.privacy = {1.0, 1e-5, spec.eps0};
  return config;
}

std::vector<double> draw_table(const SimulationSpec& spec, RandomStream& stream) {
  std::vector<double> values(spec.n_candidates);
  switch (spec.distribution) {
    case UtilityDistribution::kUniform01:
      for (double& v : values) v = stream.next_unit();
      break;
    case UtilityDistribution::kFixedTable:
      values = spec.fixed_table;
      break;
    case UtilityDistribution::kConstant:
      for (double& v : values) v = spec.constant_value;
      break;
  }
  return values;
}

}  // namespace

std::vector<SimulatedRun> simulate_traces(const SimulationSpec& spec) {
  spec.validate();
  const TuningConfig config = config_from(spec);

  std::vector<SimulatedRun> runs;
  runs.reserve(spec.n_seeds);
  for (std::size_t i = 0; i < spec.n_seeds; ++i) {
    const std::uint64_t seed = spec.base_seed + i;
    RandomStream root(seed, 0);
    RandomStream table_stream = root.derive(0);
    const UtilityTable table =
        utility_table_from_values(draw_table(spec, table_stream), spec.k);
    RandomStream loop_stream = root.derive(1);
    runs.push_back({seed, run_tuning(config, table, loop_stream)});
  }
  return runs;
}

double utility_cap_fraction(const std::vector<SimulatedRun>& runs) {
  if (runs.empty()) return 0.0;
  std::size_t hits = 0;
  for (const SimulatedRun& run : runs)
    if (run.outcome.termination == Termination::kUtilityCap) ++hits;
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

TuningOutcome worst_case_trace(double g, double u0) {
  const long cap = worst_case_iterations(g, u0);
  std::vector<bool> schedule(static_cast<std::size_t>(cap) + 4);
  for (std::size_t i = 0; i < schedule.size(); i += 2) schedule[i] = true;

  TuningConfig config;
  config.candidates = {"0"};
  config.k = 1;
  config.g = g;
  config.u0 = u0;
  config.privacy = {1.0, 1e-5, 1.0};

  const UtilityTable table = utility_table_from_values({0.0}, config.k);
  ScheduleNoiseSource noise(schedule);
  return run_tuning(config, table, noise);
}

void SweepSpec::validate() const {
  if (ratios.empty()) throw std::invalid_argument("ratios must be non-empty");
  for (long r : ratios)
    if (r < 1) throw std::invalid_argument("ratios must be >= 1");
  if (n_seeds == 0) throw std::invalid_argument("n_seeds must be positive");
  if (n_candidates == 0) throw std::invalid_argument("n_candidates must be positive");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
}

std::vector<SweepRow> sweep_iterations(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.ratios.size());
  for (std::size_t ri = 0; ri < spec.ratios.size(); ++ri) {
    const long ratio = spec.ratios[ri];
    SimulationSpec sim;
    sim.n_candidates = spec.n_candidates;
    sim.distribution = UtilityDistribution::kUniform01;
    sim.k = spec.k;
    sim.g = 1.0 / static_cast<double>(ratio);
    sim.u0 = 0.0;
    sim.eps0 = spec.eps0;
    sim.n_seeds = spec.n_seeds;
    sim.base_seed = spec.base_seed + (ri << 32);

    const std::vector<SimulatedRun> runs = simulate_traces(sim);
    double sum = 0.0, sum_sq = 0.0;
    long max_t = 0;
    for (const SimulatedRun& run : runs) {
      const double t = static_cast<double>(run.outcome.iterations);
      sum += t;
      sum_sq += t * t;
      max_t = std::max(max_t, run.outcome.iterations);
    }
    const double n = static_cast<double>(runs.size());
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    rows.push_back({ratio, mean, max_t, std::sqrt(var), runs.size()});
  }
  return rows;
}

DpCheckResult dp_distinguishability_check(const Dataset& data,
                                          const Dataset& neighbor,
                                          const Dataset& valid,
                                          const TuningConfig& config,
                                          std::size_t n_trials,
                                          std::uint64_t seed) {
  config.validate();
  if (n_trials == 0) throw std::invalid_argument("n_trials must be positive");

  const NearestCentroidTrainer trainer;
  RandomStream root(seed, 0);

  const std::size_t n_buckets = config.candidates.size() + 1;  // + "none"
  std::vector<std::vector<std::size_t>> counts(2,
                                               std::vector<std::size_t>(n_buckets, 0));

  for (int side = 0; side < 2; ++side) {
    const Dataset& d = side == 0 ? data : neighbor;
    RandomStream table_stream = root.derive(static_cast<std::uint64_t>(side));
    const UtilityTable table = build_utility_table(trainer, d, valid, config.k,
                                                   config.candidates, table_stream);
    LaplaceNoiseSource noise(config.k, config.privacy.eps0,
                             root.derive(10 + static_cast<std::uint64_t>(side)),
                             root.derive(20 + static_cast<std::uint64_t>(side)));
    TunerState fresh;
    fresh.u = config.u0;
    fresh.step = 1;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const double threshold = propose_threshold(fresh, config, noise);
      const std::optional<std::size_t> accepted =
          scan_candidates(table, threshold, config, noise);
      counts[static_cast<std::size_t>(side)][accepted ? *accepted
                                                      : n_buckets - 1]++;
    }
  }

  DpCheckResult result;
  const double n = static_cast<double>(n_trials);
  for (std::size_t b = 0; b < n_buckets; ++b) {
    DpCheckResult::Bucket bucket;
    bucket.outcome = b + 1 == n_buckets ? "none" : std::to_string(b);
    bucket.count_a = counts[0][b];
    bucket.count_b = counts[1][b];
    if (bucket.count_a >= 100 && bucket.count_b >= 100) {
      bucket.included = true;
      bucket.abs_log_ratio = std::abs(
          std::log(static_cast<double>(bucket.count_a) / n) -
          std::log(static_cast<double>(bucket.count_b) / n));
      result.eps_hat = std::max(result.eps_hat, bucket.abs_log_ratio);
    } else {
      ++result.excluded_buckets;
    }
    result.buckets.push_back(bucket);
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "ratio,mean_T,max_T,std_T,n_seeds\n";
  for (const SweepRow& row : rows) {
    out << row.ratio << ',' << row.mean_iterations << ',' << row.max_iterations
        << ',' << row.std_iterations << ',' << row.n_seeds << '\n';
  }
}

void write_step_u_csv(std::ostream& out, const std::vector<SimulatedRun>& runs) {
  out << "seed,iter,u,step\n";
  for (const SimulatedRun& run : runs) {
    for (const IterationRecord& rec : run.outcome.trace) {
      out << run.seed << ',' << rec.iteration << ',' << rec.u_after << ','
          << rec.step_after << '\n';
    }
  }
}

}  // namespace dpht
