#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpht/accountant.hpp"
#include "dpht/mechanisms.hpp"
#include "dpht/utility.hpp"

namespace dpht {

struct TuningConfig {
  std::vector<std::string> candidates;
  int k = 1;
  double g = 0.01;   // utility granularity, in (0,1)
  double u0 = 0.0;   // utility lower bound, in [0,1)
  PrivacyParams privacy{1.0, 1e-5, 0.1};

  void validate() const;
};

struct TunerState {
  double u = 0.0;
  std::uint64_t step = 1;
  long count = 0;
  std::optional<std::size_t> selected;
};

struct IterationRecord {
  long iteration = 0;
  double proposed_threshold = 0.0;
  std::size_t scanned = 0;  // candidates tested this iteration
  std::optional<std::size_t> accepted;
  double u_after = 0.0;
  std::uint64_t step_after = 0;
};

enum class Termination { kStepExhausted, kUtilityCap };

struct TuningOutcome {
  std::optional<std::size_t> selected;
  double u_final = 0.0;
  long iterations = 0;
  Termination termination = Termination::kStepExhausted;
  std::vector<IterationRecord> trace;
  std::optional<CompositionReport> privacy;
};

// Noise supplier for one tuning run. threshold_noise() is drawn once per
// iteration, query_noise() once per scanned candidate. Swappable so tests
// can force deterministic or schedule-driven runs.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double threshold_noise() = 0;
  virtual double query_noise() = 0;
};

class LaplaceNoiseSource : public NoiseSource {
 public:
  LaplaceNoiseSource(int k, double eps0, RandomStream threshold_stream,
                     RandomStream query_stream);
  double threshold_noise() override;
  double query_noise() override;

 private:
  LaplaceScale threshold_scale_;
  LaplaceScale query_scale_;
  RandomStream threshold_stream_;
  RandomStream query_stream_;
};

class ZeroNoiseSource : public NoiseSource {
 public:
  double threshold_noise() override { return 0.0; }
  double query_noise() override { return 0.0; }
};

// Forces the accept/reject outcome of each iteration: a scheduled accept
// makes the first scanned candidate pass, a reject makes every candidate
// fail. Iterations beyond the schedule reject.
class ScheduleNoiseSource : public NoiseSource {
 public:
  explicit ScheduleNoiseSource(std::vector<bool> accepts);
  double threshold_noise() override;
  double query_noise() override;

 private:
  std::vector<bool> accepts_;
  std::size_t iteration_ = 0;
  bool accept_current_ = false;
};

// One threshold proposal: u + step*g + Lap(2/(k*eps0)). Fresh draw each call.
double propose_threshold(const TunerState& state, const TuningConfig& config,
                         NoiseSource& noise);

// AboveThreshold scan in candidate order; returns the first s with
// u_s + Lap(4/(k*eps0)) >= threshold, or nothing. scanned_out reports how
// many candidates drew noise before the scan stopped.
std::optional<std::size_t> scan_candidates(const UtilityTable& utilities,
                                           double threshold,
                                           const TuningConfig& config,
                                           NoiseSource& noise,
                                           std::size_t* scanned_out = nullptr);

// The propose-test loop with doubling step. On acceptance u grows by the
// pre-doubling step*g and the step doubles; otherwise the step integer-halves.
// Stops when the step reaches 0 or, checked at the loop tail, when u >= 1.
TuningOutcome run_tuning(const TuningConfig& config, const UtilityTable& utilities,
                         NoiseSource& noise);

// Convenience overload deriving Laplace noise streams from `stream`.
TuningOutcome run_tuning(const TuningConfig& config, const UtilityTable& utilities,
                         RandomStream& stream);

using PrivateTrainHook =
    std::function<Predictor(const Dataset& train, const std::string& candidate,
                            double eps, double delta, RandomStream& stream)>;

struct TuneAndTrainResult {
  TuningOutcome outcome;
  Predictor model;
};

// Full pipeline: utility table -> tuning loop -> one private training call on
// the complete training set with the selected candidate. Throws
// NoCandidateSelected if the loop ends without a selection.
TuneAndTrainResult tune_and_train(const TuningConfig& config, const Dataset& train,
                                  const Dataset& valid, const Trainer& trainer,
                                  const PrivateTrainHook& private_train,
                                  RandomStream& stream, double delta_slack);

struct NoCandidateSelected : std::runtime_error {
  TuningOutcome outcome;
  explicit NoCandidateSelected(TuningOutcome o);
};

// One trace line per record: {"iter":..,"threshold":..,"scanned":..,
// "accepted":..,"u":..,"step":..}.
void write_trace_jsonl(std::ostream& out, const std::vector<IterationRecord>& trace);

}  // namespace dpht
