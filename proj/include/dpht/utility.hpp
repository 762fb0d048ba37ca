#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpht/random.hpp"

namespace dpht {

struct Record {
  std::uint64_t id;
  std::vector<double> features;
  int label;
};

struct Dataset {
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
  std::size_t feature_dim() const;
  void validate() const;

  // Headerless CSV, all columns numeric features except the last (integer
  // label); record id = row index.
  static Dataset load_csv(const std::string& path);
};

// Disjoint partition assignment; a pure function of (record id, k), so a
// record's partition never depends on which other records are present.
struct Partitioning {
  int k = 1;
  std::vector<int> empty_partitions;  // diagnostics from create()

  static Partitioning create(const Dataset& data, int k);

  // Partition index in [0, k).
  int assign(std::uint64_t record_id) const;
};

using Predictor = std::function<int(const std::vector<double>&)>;

// One model training backend. partition_accuracy trains on one partition
// and scores on the validation set; the result must land in [0,1].
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual double partition_accuracy(const std::vector<const Record*>& part,
                                    const std::string& candidate,
                                    const Dataset& valid,
                                    RandomStream& stream) const = 0;
};

// Per-class feature mean, predict the nearest centroid by Euclidean
// distance. Deterministic and genuinely data-dependent; the hyperparameter
// candidate is accepted but unused.
class NearestCentroidTrainer : public Trainer {
 public:
  double partition_accuracy(const std::vector<const Record*>& part,
                            const std::string& candidate, const Dataset& valid,
                            RandomStream& stream) const override;

  static Predictor fit(const std::vector<const Record*>& part);
};

// Table-driven stand-in: the candidate string itself is the utility value,
// reported for every partition. Bypasses the data path entirely.
class SyntheticTrainer : public Trainer {
 public:
  double partition_accuracy(const std::vector<const Record*>& part,
                            const std::string& candidate, const Dataset& valid,
                            RandomStream& stream) const override;
};

// Opaque external hook (e.g. a private training routine supplied by the
// caller).
class ExternalTrainer : public Trainer {
 public:
  using Hook = std::function<double(const std::vector<const Record*>&,
                                    const std::string&, const Dataset&,
                                    RandomStream&)>;
  explicit ExternalTrainer(Hook hook) : hook_(std::move(hook)) {}

  double partition_accuracy(const std::vector<const Record*>& part,
                            const std::string& candidate, const Dataset& valid,
                            RandomStream& stream) const override;

 private:
  Hook hook_;
};

struct UtilityTable {
  // per_partition[s][i] = accuracy of candidate s trained on partition i.
  std::vector<std::vector<double>> per_partition;
  std::vector<double> per_candidate;  // mean across partitions

  std::size_t candidate_count() const { return per_candidate.size(); }
};

// Trains one model per partition (on that partition only) and averages the
// validation accuracies. A failed or empty partition scores 0 so the 1/k
// sensitivity bound stays intact; failures are counted, never fatal.
struct CandidateEvaluation {
  std::vector<double> per_partition;
  double mean = 0.0;
  int failed_partitions = 0;
};

CandidateEvaluation evaluate_candidate(const Trainer& trainer, const Dataset& data,
                                       const Partitioning& parts,
                                       const Dataset& valid,
                                       const std::string& candidate,
                                       RandomStream& stream);

UtilityTable build_utility_table(const Trainer& trainer, const Dataset& data,
                                 const Dataset& valid, int k,
                                 const std::vector<std::string>& candidates,
                                 RandomStream& stream);

// Utility table straight from candidate values, no data involved.
UtilityTable utility_table_from_values(const std::vector<double>& values, int k);

}  // namespace dpht
