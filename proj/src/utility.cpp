#include "dpht/utility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dpht {

std::size_t Dataset::feature_dim() const {
  return records.empty() ? 0 : records.front().features.size();
}

void Dataset::validate() const {
  if (records.empty()) throw std::invalid_argument("dataset is empty");
  const std::size_t dim = records.front().features.size();
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(records.size());
  for (const Record& r : records) {
    if (r.features.size() != dim)
      throw std::invalid_argument("inconsistent feature dimension at record " +
                                  std::to_string(r.id));
    if (!seen.insert(r.id).second)
      throw std::invalid_argument("duplicate record id " + std::to_string(r.id));
  }
}

Dataset Dataset::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  Dataset data;
  std::string line;
  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        cells.push_back(std::stod(cell, &pos));
        if (pos != cell.size() && cell.find_first_not_of(" \t\r", pos) != std::string::npos)
          throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(row + 1) +
                                 ": cannot parse numeric cell '" + cell + "'");
      }
    }
    if (cells.size() < 2)
      throw std::runtime_error(path + ":" + std::to_string(row + 1) +
                               ": need at least one feature and a label");
    Record r;
    r.id = row;
    r.features.assign(cells.begin(), cells.end() - 1);
    r.label = static_cast<int>(std::lround(cells.back()));
    data.records.push_back(std::move(r));
    ++row;
  }
  data.validate();
  return data;
}

Partitioning Partitioning::create(const Dataset& data, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<std::size_t>(k) > data.size())
    throw std::invalid_argument("k exceeds dataset size");
  Partitioning parts;
  parts.k = k;
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (const Record& r : data.records) counts[static_cast<std::size_t>(parts.assign(r.id))]++;
  for (int i = 0; i < k; ++i) {
    if (counts[static_cast<std::size_t>(i)] == 0) parts.empty_partitions.push_back(i);
  }
  return parts;
}

int Partitioning::assign(std::uint64_t record_id) const {
  return static_cast<int>(mix64(record_id) % static_cast<std::uint64_t>(k));
}

static double score(const Predictor& model, const Dataset& valid) {
  std::size_t correct = 0;
  for (const Record& r : valid.records) {
    if (model(r.features) == r.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(valid.size());
}

Predictor NearestCentroidTrainer::fit(const std::vector<const Record*>& part) {
  if (part.empty()) throw std::runtime_error("empty training partition");
  const std::size_t dim = part.front()->features.size();

  struct Centroid {
    std::vector<double> sum;
    std::size_t n = 0;
  };
  std::vector<std::pair<int, Centroid>> classes;
  for (const Record* r : part) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return c.first == r->label; });
    if (it == classes.end()) {
      classes.push_back({r->label, {std::vector<double>(dim, 0.0), 0}});
      it = classes.end() - 1;
    }
    for (std::size_t d = 0; d < dim; ++d) it->second.sum[d] += r->features[d];
    it->second.n++;
  }

  struct Labeled {
    int label;
    std::vector<double> mean;
  };
  std::vector<Labeled> centroids;
  for (auto& [label, c] : classes) {
    std::vector<double> mean(dim);
    for (std::size_t d = 0; d < dim; ++d) mean[d] = c.sum[d] / static_cast<double>(c.n);
    centroids.push_back({label, std::move(mean)});
  }

  return [centroids](const std::vector<double>& x) {
    double best = std::numeric_limits<double>::infinity();
    int label = centroids.front().label;
    for (const Labeled& c : centroids) {
      double d2 = 0.0;
      for (std::size_t d = 0; d < x.size() && d < c.mean.size(); ++d) {
        const double diff = x[d] - c.mean[d];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        label = c.label;
      }
    }
    return label;
  };
}

double NearestCentroidTrainer::partition_accuracy(
    const std::vector<const Record*>& part, const std::string& /*candidate*/,
    const Dataset& valid, RandomStream& /*stream*/) const {
  return score(fit(part), valid);
}

double SyntheticTrainer::partition_accuracy(const std::vector<const Record*>&,
                                            const std::string& candidate,
                                            const Dataset&, RandomStream&) const {
  std::size_t pos = 0;
  const double value = std::stod(candidate, &pos);
  if (pos != candidate.size() || !(value >= 0.0) || !(value <= 1.0))
    throw std::runtime_error("synthetic candidate must be a utility in [0,1]: " +
                             candidate);
  return value;
}

double ExternalTrainer::partition_accuracy(const std::vector<const Record*>& part,
                                           const std::string& candidate,
                                           const Dataset& valid,
                                           RandomStream& stream) const {
  return hook_(part, candidate, valid, stream);
}

CandidateEvaluation evaluate_candidate(const Trainer& trainer, const Dataset& data,
                                       const Partitioning& parts,
                                       const Dataset& valid,
                                       const std::string& candidate,
                                       RandomStream& stream) {
  if (valid.records.empty()) throw std::invalid_argument("validation set is empty");

  std::vector<std::vector<const Record*>> by_partition(
      static_cast<std::size_t>(parts.k));
  for (const Record& r : data.records)
    by_partition[static_cast<std::size_t>(parts.assign(r.id))].push_back(&r);

  CandidateEvaluation eval;
  eval.per_partition.resize(static_cast<std::size_t>(parts.k), 0.0);
  double sum = 0.0;
  for (int i = 0; i < parts.k; ++i) {
    RandomStream cell = stream.derive(static_cast<std::uint64_t>(i));
    double acc = 0.0;
    try {
      acc = trainer.partition_accuracy(by_partition[static_cast<std::size_t>(i)],
                                       candidate, valid, cell);
      acc = std::clamp(acc, 0.0, 1.0);
    } catch (const std::exception&) {
      // A failed or degenerate partition contributes 0; aborting would break
      // the 1/k sensitivity argument.
      eval.failed_partitions++;
      acc = 0.0;
    }
    eval.per_partition[static_cast<std::size_t>(i)] = acc;
    sum += acc;
  }
  eval.mean = sum / static_cast<double>(parts.k);
  return eval;
}

UtilityTable build_utility_table(const Trainer& trainer, const Dataset& data,
                                 const Dataset& valid, int k,
                                 const std::vector<std::string>& candidates,
                                 RandomStream& stream) {
  const Partitioning parts = Partitioning::create(data, k);
  UtilityTable table;
  table.per_partition.reserve(candidates.size());
  table.per_candidate.reserve(candidates.size());
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    RandomStream per_candidate = stream.derive(s);
    CandidateEvaluation eval =
        evaluate_candidate(trainer, data, parts, valid, candidates[s], per_candidate);
    table.per_partition.push_back(std::move(eval.per_partition));
    table.per_candidate.push_back(eval.mean);
  }
  return table;
}

UtilityTable utility_table_from_values(const std::vector<double>& values, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  UtilityTable table;
  for (double v : values) {
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::invalid_argument("utility value outside [0,1]");
    table.per_partition.emplace_back(static_cast<std::size_t>(k), v);
    table.per_candidate.push_back(v);
  }
  return table;
}

}  // namespace dpht
