// Command-line driver: tune / simulate / sweep / account.
//
// Exit codes: 0 success (tune: a candidate was selected), 1 bad config or
// invalid parameters, 2 tuning finished without selecting a candidate.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "dpht/config.hpp"
#include "dpht/simulation.hpp"
#include "dpht/tuner.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
};

dpht::RunConfig load_config(const GlobalOpts& opts) {
  dpht::RunConfig config = dpht::RunConfig::load(opts.config_path);
  if (opts.seed_override) config.seed = *opts.seed_override;
  if (opts.out_override) config.out_dir = *opts.out_override;
  return config;
}

dpht::TuningConfig tuning_config(const dpht::RunConfig& config) {
  dpht::TuningConfig tc;
  tc.candidates = config.candidates;
  tc.k = config.k;
  tc.g = config.g;
  tc.u0 = config.u0;
  tc.privacy = {config.eps, config.delta, config.eps0};
  tc.validate();
  return tc;
}

ordered_json report_json(const dpht::CompositionReport& report) {
  return ordered_json{
      {"iterations", report.iterations},
      {"eps_additional", report.eps_additional},
      {"delta_additional", report.delta_additional},
      {"eps_total", report.eps_total},
      {"delta_total", report.delta_total},
      {"method",
       report.method == dpht::CompositionMethod::kBasic ? "basic" : "advanced"},
  };
}

ordered_json outcome_json(const dpht::TuningOutcome& outcome,
                          const dpht::RunConfig& config) {
  ordered_json doc;
  if (outcome.selected) {
    doc["selected_index"] = *outcome.selected;
    doc["selected_candidate"] = config.candidates[*outcome.selected];
  } else {
    doc["selected_index"] = nullptr;
  }
  doc["u_final"] = outcome.u_final;
  doc["iterations"] = outcome.iterations;
  doc["termination"] = outcome.termination == dpht::Termination::kUtilityCap
                           ? "utility_cap"
                           : "step_exhausted";
  if (outcome.privacy) doc["privacy"] = report_json(*outcome.privacy);
  return doc;
}

int cmd_tune(const GlobalOpts& opts) {
  const dpht::RunConfig config = load_config(opts);
  const dpht::TuningConfig tc = tuning_config(config);
  if (config.train_path.empty() || config.valid_path.empty())
    throw std::runtime_error("tune requires train_path and valid_path");

  const dpht::Dataset train = dpht::Dataset::load_csv(config.train_path);
  const dpht::Dataset valid = dpht::Dataset::load_csv(config.valid_path);

  std::unique_ptr<dpht::Trainer> trainer;
  if (config.trainer == "synthetic")
    trainer = std::make_unique<dpht::SyntheticTrainer>();
  else
    trainer = std::make_unique<dpht::NearestCentroidTrainer>();

  // Stand-in for an external private training routine: fits the reference
  // model on the full training set.
  const dpht::PrivateTrainHook hook =
      [](const dpht::Dataset& data, const std::string&, double, double,
         dpht::RandomStream&) {
        std::vector<const dpht::Record*> all;
        for (const dpht::Record& r : data.records) all.push_back(&r);
        return dpht::NearestCentroidTrainer::fit(all);
      };

  fs::create_directories(config.out_dir);
  dpht::RandomStream stream(config.seed, 0);

  dpht::TuningOutcome outcome;
  int exit_code = 0;
  try {
    dpht::TuneAndTrainResult result = dpht::tune_and_train(
        tc, train, valid, *trainer, hook, stream, config.delta_slack);
    outcome = std::move(result.outcome);
  } catch (const dpht::NoCandidateSelected& e) {
    outcome = e.outcome;
    exit_code = 2;
  }

  std::ofstream out_json(fs::path(config.out_dir) / "outcome.json");
  out_json << outcome_json(outcome, config).dump(2) << '\n';
  std::ofstream out_trace(fs::path(config.out_dir) / "trace.jsonl");
  dpht::write_trace_jsonl(out_trace, outcome.trace);

  if (exit_code == 0)
    std::cout << "selected candidate " << *outcome.selected << " ("
              << config.candidates[*outcome.selected] << "), T = "
              << outcome.iterations << ", eps_total = "
              << outcome.privacy->eps_total << '\n';
  else
    std::cout << "no candidate selected (T = " << outcome.iterations << ")\n";
  return exit_code;
}

dpht::SimulationSpec simulation_spec(const dpht::RunConfig& config) {
  dpht::SimulationSpec spec;
  spec.n_candidates = config.n_candidates;
  spec.distribution = config.utility_distribution == "constant"
                          ? dpht::UtilityDistribution::kConstant
                          : dpht::UtilityDistribution::kUniform01;
  spec.constant_value = config.constant_value;
  spec.k = config.k;
  spec.g = config.g;
  spec.u0 = config.u0;
  spec.eps0 = config.eps0;
  spec.n_seeds = config.n_seeds;
  spec.base_seed = config.seed;
  spec.validate();
  return spec;
}

int cmd_simulate(const GlobalOpts& opts) {
  const dpht::RunConfig config = load_config(opts);
  const dpht::SimulationSpec spec = simulation_spec(config);

  const std::vector<dpht::SimulatedRun> runs = dpht::simulate_traces(spec);

  fs::create_directories(config.out_dir);
  const fs::path traces_dir = fs::path(config.out_dir) / "traces";
  fs::create_directories(traces_dir);
  double mean_t = 0.0;
  for (const dpht::SimulatedRun& run : runs) {
    std::ofstream out(traces_dir / ("trace_" + std::to_string(run.seed) + ".jsonl"));
    dpht::write_trace_jsonl(out, run.outcome.trace);
    mean_t += static_cast<double>(run.outcome.iterations);
  }
  mean_t /= static_cast<double>(runs.size());

  std::ofstream step_u(fs::path(config.out_dir) / "step_u.csv");
  dpht::write_step_u_csv(step_u, runs);

  const double converged = dpht::utility_cap_fraction(runs);
  ordered_json summary{{"n_seeds", runs.size()},
                       {"utility_cap_fraction", converged},
                       {"mean_T", mean_t}};
  std::ofstream out(fs::path(config.out_dir) / "summary.json");
  out << summary.dump(2) << '\n';

  std::cout << "simulated " << runs.size() << " runs; utility_cap fraction = "
            << converged << ", mean T = " << mean_t << '\n';
  return 0;
}

int cmd_sweep(const GlobalOpts& opts) {
  const dpht::RunConfig config = load_config(opts);
  dpht::SweepSpec spec;
  spec.ratios = config.ratios;
  spec.n_seeds = config.n_seeds;
  spec.n_candidates = config.n_candidates;
  spec.k = config.k;
  spec.eps0 = config.eps0;
  spec.base_seed = config.seed;
  spec.validate();

  const std::vector<dpht::SweepRow> rows = dpht::sweep_iterations(spec);
  fs::create_directories(config.out_dir);
  std::ofstream out(fs::path(config.out_dir) / "sweep.csv");
  dpht::write_sweep_csv(out, rows);
  dpht::write_sweep_csv(std::cout, rows);
  return 0;
}

struct AccountOpts {
  double eps = 1.0;
  double delta = 1e-5;
  double eps0 = 0.1;
  double g = 0.01;
  double u0 = 0.0;
  long iterations = 0;
  std::size_t candidates = 100;
  double delta_slack = 1e-6;
  std::string csv_path;
};

int cmd_account(const AccountOpts& opts) {
  const dpht::PrivacyParams params{opts.eps, opts.delta, opts.eps0};
  if (!(opts.g > 0.0) || !(opts.g < 1.0))
    throw std::runtime_error("g must lie in (0,1)");
  const dpht::BudgetComparisonTable table = dpht::budget_comparison(
      params, opts.candidates, opts.iterations, opts.g, opts.u0, opts.delta_slack);

  std::cout << std::left << std::setw(18) << "method" << std::setw(24) << "eps"
            << std::setw(14) << "delta" << "note\n";
  for (const dpht::BudgetRow& row : table.rows) {
    std::string eps_str;
    for (std::size_t i = 0; i < row.eps.size(); ++i) {
      if (i) eps_str += " / ";
      eps_str += std::to_string(row.eps[i]);
    }
    std::cout << std::left << std::setw(18) << row.method << std::setw(24)
              << eps_str << std::setw(14) << row.delta << row.note << '\n';
  }

  if (!opts.csv_path.empty()) {
    std::ofstream csv(opts.csv_path);
    csv << "method,eps_low,eps_high,delta,note\n";
    for (const dpht::BudgetRow& row : table.rows) {
      csv << row.method << ',' << row.eps.front() << ',' << row.eps.back() << ','
          << row.delta << ",\"" << row.note << "\"\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private hyperparameter tuning via a propose-test "
               "loop with doubling step"};
  app.require_subcommand(1);

  GlobalOpts globals;
  std::optional<std::uint64_t> seed_opt;
  std::optional<std::string> out_opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", globals.config_path, "key=value config file")
        ->required();
    sub->add_option("--seed", seed_opt, "override config seed");
    sub->add_option("--out", out_opt, "override output directory");
  };

  CLI::App* tune = app.add_subcommand("tune", "run the full tuning pipeline");
  add_common(tune);
  CLI::App* simulate = app.add_subcommand("simulate", "synthetic trace simulation");
  add_common(simulate);
  CLI::App* sweep = app.add_subcommand("sweep", "iteration count vs (u*-u0)/g");
  add_common(sweep);

  AccountOpts account;
  CLI::App* acct = app.add_subcommand("account", "privacy budget comparison");
  acct->add_option("--eps", account.eps, "final training epsilon");
  acct->add_option("--delta", account.delta, "final training delta");
  acct->add_option("--eps0", account.eps0, "per-iteration epsilon");
  acct->add_option("--g", account.g, "utility granularity");
  acct->add_option("--u0", account.u0, "utility lower bound");
  acct->add_option("--T", account.iterations, "observed iteration count");
  acct->add_option("--candidates", account.candidates, "candidate set size");
  acct->add_option("--delta-slack", account.delta_slack,
                   "advanced composition slack");
  acct->add_option("--csv", account.csv_path, "also write the table as CSV");

  CLI11_PARSE(app, argc, argv);
  globals.seed_override = seed_opt;
  globals.out_override = out_opt;

  try {
    if (tune->parsed()) return cmd_tune(globals);
    if (simulate->parsed()) return cmd_simulate(globals);
    if (sweep->parsed()) return cmd_sweep(globals);
    if (acct->parsed()) return cmd_account(account);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
