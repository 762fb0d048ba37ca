#pragma once

// Shared helpers for the test suites: synthetic dataset construction and a
// brute-force schedule driver used as an oracle against the accountant's
// iteration cap.

#include <cmath>
#include <string>
#include <vector>

#include "dpht/simulation.hpp"
#include "dpht/tuner.hpp"
#include "dpht/utility.hpp"

namespace dpht::testing {

// Two well-separated classes with centroids at (-1, 0) and (+1, 0); every
// point stays within `radius` of its centroid, so nearest-centroid scores 1.
inline Dataset separable_dataset(std::size_t n, double radius, std::uint64_t seed) {
  Dataset data;
  RandomStream stream(seed, 900);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double cx = label == 0 ? -1.0 : 1.0;
    const double angle = stream.next_unit() * 6.283185307179586;
    const double r = stream.next_unit() * radius;
    data.records.push_back(
        {i, {cx + r * std::cos(angle), r * std::sin(angle)}, label});
  }
  return data;
}

// Noisy two-class dataset where nearest-centroid accuracy is genuinely
// data-dependent (classes overlap).
inline Dataset noisy_dataset(std::size_t n, std::uint64_t seed) {
  Dataset data;
  RandomStream stream(seed, 901);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(stream.next_u64() % 2);
    const double cx = label == 0 ? 0.0 : 1.0;
    // spread comparable to the class separation
    const double x = cx + (stream.next_unit() - 0.5) * 2.5;
    const double y = cx + (stream.next_unit() - 0.5) * 2.5;
    data.records.push_back({i, {x, y}, label});
  }
  return data;
}

// Neighbor by removal: same records minus the one at `drop_index`; ids are
// untouched.
inline Dataset remove_record(const Dataset& data, std::size_t drop_index) {
  Dataset neighbor;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    if (i != drop_index) neighbor.records.push_back(data.records[i]);
  }
  return neighbor;
}

// Index of the record whose removal moves the averaged utility the most
// under the reference trainer; gives the distinguishability probe a
// non-vacuous neighboring pair.
inline std::size_t pivotal_record(const Dataset& data, const Dataset& valid, int k) {
  const NearestCentroidTrainer trainer;
  RandomStream stream(0, 0);
  const UtilityTable base = build_utility_table(trainer, data, valid, k, {"x"}, stream);
  std::size_t best = 0;
  double best_diff = -1.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Dataset neighbor = remove_record(data, i);
    const UtilityTable other =
        build_utility_table(trainer, neighbor, valid, k, {"x"}, stream);
    const double diff = std::abs(base.per_candidate[0] - other.per_candidate[0]);
    if (diff > best_diff) {
      best_diff = diff;
      best = i;
    }
  }
  return best;
}

// Runs the tuning loop under a forced accept/reject schedule and reports the
// iteration count. Utilities are irrelevant (the schedule overrides them).
inline long schedule_run_count(const std::vector<bool>& schedule, double g,
                               double u0) {
  TuningConfig config;
  config.candidates = {"0"};
  config.k = 1;
  config.g = g;
  config.u0 = u0;
  config.privacy = {1.0, 1e-5, 1.0};
  const UtilityTable table = utility_table_from_values({0.0}, 1);
  ScheduleNoiseSource noise(schedule);
  return run_tuning(config, table, noise).iterations;
}

// Exhaustive oracle: the largest iteration count any accept/reject schedule
// of length <= max_len can force.
inline long max_count_over_schedules(double g, double u0, int max_len) {
  long best = 0;
  for (std::uint64_t bits = 0; bits < (1ULL << max_len); ++bits) {
    std::vector<bool> schedule(static_cast<std::size_t>(max_len));
    for (int i = 0; i < max_len; ++i) schedule[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    best = std::max(best, schedule_run_count(schedule, g, u0));
  }
  return best;
}

}  // namespace dpht::testing
