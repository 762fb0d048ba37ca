#include "dpht/tuner.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <utility>

namespace dpht {

namespace {
constexpr std::uint64_t kStepCap = 1ULL << 62;
constexpr double kForce = 1e18;
}  // namespace

void TuningConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  // g = 1 is admitted so iteration sweeps can realize (1-u0)/g = 1.
  if (!(g > 0.0) || !(g <= 1.0)) throw std::invalid_argument("g must lie in (0,1]");
  if (!(u0 >= 0.0) || !(u0 < 1.0))
    throw std::invalid_argument("u0 must lie in [0,1)");
  privacy.validate();
}

LaplaceNoiseSource::LaplaceNoiseSource(int k, double eps0,
                                       RandomStream threshold_stream,
                                       RandomStream query_stream)
    : threshold_scale_(threshold_noise_scale(k, eps0)),
      query_scale_(query_noise_scale(k, eps0)),
      threshold_stream_(threshold_stream),
      query_stream_(query_stream) {}

double LaplaceNoiseSource::threshold_noise() {
  return laplace_sample(threshold_scale_, threshold_stream_);
}

double LaplaceNoiseSource::query_noise() {
  return laplace_sample(query_scale_, query_stream_);
}

ScheduleNoiseSource::ScheduleNoiseSource(std::vector<bool> accepts)
    : accepts_(std::move(accepts)) {}

double ScheduleNoiseSource::threshold_noise() {
  accept_current_ = iteration_ < accepts_.size() && accepts_[iteration_];
  ++iteration_;
  return 0.0;
}

double ScheduleNoiseSource::query_noise() {
  return accept_current_ ? kForce : -kForce;
}

double propose_threshold(const TunerState& state, const TuningConfig& config,
                         NoiseSource& noise) {
  if (state.step < 1) throw std::invalid_argument("step must be >= 1 to propose");
  return state.u + static_cast<double>(state.step) * config.g + noise.threshold_noise();
}

std::optional<std::size_t> scan_candidates(const UtilityTable& utilities,
                                           double threshold,
                                           const TuningConfig& /*config*/,
                                           NoiseSource& noise,
                                           std::size_t* scanned_out) {
  std::size_t scanned = 0;
  std::optional<std::size_t> hit;
  for (std::size_t s = 0; s < utilities.candidate_count(); ++s) {
    ++scanned;
    if (utilities.per_candidate[s] + noise.query_noise() >= threshold) {
      hit = s;
      break;
    }
  }
  if (scanned_out) *scanned_out = scanned;
  return hit;
}

TuningOutcome run_tuning(const TuningConfig& config, const UtilityTable& utilities,
                         NoiseSource& noise) {
  config.validate();

  TunerState state;
  state.u = config.u0;
  state.step = 1;

  TuningOutcome outcome;
  while (state.step != 0) {
    state.count++;
    const double threshold = propose_threshold(state, config, noise);

    std::size_t scanned = 0;
    const std::optional<std::size_t> accepted =
        scan_candidates(utilities, threshold, config, noise, &scanned);

    if (accepted) {
      state.selected = *accepted;
      state.u += static_cast<double>(state.step) * config.g;  // pre-doubling step
      if (state.step >= kStepCap)
        throw std::runtime_error("step overflow: doubling past 2^62");
      state.step *= 2;
    } else {
      state.step /= 2;
    }

    outcome.trace.push_back({state.count, threshold, scanned, accepted, state.u,
                             state.step});
    if (state.u >= 1.0) break;
  }

  outcome.selected = state.selected;
  outcome.u_final = state.u;
  outcome.iterations = state.count;
  outcome.termination =
      state.u >= 1.0 ? Termination::kUtilityCap : Termination::kStepExhausted;
  return outcome;
}

TuningOutcome run_tuning(const TuningConfig& config, const UtilityTable& utilities,
                         RandomStream& stream) {
  LaplaceNoiseSource noise(config.k, config.privacy.eps0, stream.derive(1),
                           stream.derive(2));
  return run_tuning(config, utilities, noise);
}

NoCandidateSelected::NoCandidateSelected(TuningOutcome o)
    : std::runtime_error("tuning terminated without selecting a candidate"),
      outcome(std::move(o)) {}

TuneAndTrainResult tune_and_train(const TuningConfig& config, const Dataset& train,
                                  const Dataset& valid, const Trainer& trainer,
                                  const PrivateTrainHook& private_train,
                                  RandomStream& stream, double delta_slack) {
  config.validate();
  RandomStream table_stream = stream.derive(10);
  const UtilityTable table = build_utility_table(trainer, train, valid, config.k,
                                                 config.candidates, table_stream);

  RandomStream loop_stream = stream.derive(11);
  TuningOutcome outcome = run_tuning(config, table, loop_stream);
  outcome.privacy = total_privacy(config.privacy, outcome.iterations, delta_slack,
                                  CompositionMethod::kAdvanced);
  if (!outcome.selected) throw NoCandidateSelected(std::move(outcome));

  RandomStream train_stream = stream.derive(12);
  Predictor model =
      private_train(train, config.candidates[*outcome.selected],
                    config.privacy.eps, config.privacy.delta, train_stream);
  return {std::move(outcome), std::move(model)};
}

void write_trace_jsonl(std::ostream& out, const std::vector<IterationRecord>& trace) {
  for (const IterationRecord& rec : trace) {
    nlohmann::ordered_json line;
    line["iter"] = rec.iteration;
    line["threshold"] = rec.proposed_threshold;
    line["scanned"] = rec.scanned;
    if (rec.accepted)
      line["accepted"] = *rec.accepted;
    else
      line["accepted"] = nullptr;
    line["u"] = rec.u_after;
    line["step"] = rec.step_after;
    out << line.dump() << '\n';
  }
}

}  // namespace dpht
