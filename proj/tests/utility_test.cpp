#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dpht/utility.hpp"
#include "support.hpp"

using namespace dpht;

namespace {

Dataset labeled_valid(std::size_t n, double majority_fraction) {
  // fraction `majority_fraction` of records carry label 1, the rest label 0
  Dataset valid;
  const std::size_t ones = static_cast<std::size_t>(majority_fraction * n + 0.5);
  for (std::size_t i = 0; i < n; ++i)
    valid.records.push_back({i, {0.0, 0.0}, i < ones ? 1 : 0});
  return valid;
}

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& content) {
    path = std::string(std::tmpnam(nullptr)) + ".csv";
    std::ofstream out(path);
    out << content;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv loading") {
  TempCsv good("1.5,2.0,0\n-0.5,0.25,1\n3,4,1\n");
  const Dataset data = Dataset::load_csv(good.path);
  REQUIRE(data.size() == 3);
  CHECK(data.records[0].id == 0);
  CHECK(data.records[0].features == std::vector<double>{1.5, 2.0});
  CHECK(data.records[0].label == 0);
  CHECK(data.records[2].label == 1);

  TempCsv bad("1.0,abc,0\n");
  CHECK_THROWS(Dataset::load_csv(bad.path));
  TempCsv short_row("1.0\n");
  CHECK_THROWS(Dataset::load_csv(short_row.path));
  CHECK_THROWS(Dataset::load_csv("/nonexistent/file.csv"));
}

TEST_CASE("partitioning is a pure function of (id, k)") {
  const Dataset data = testing::noisy_dataset(100, 1);

  const Partitioning single = Partitioning::create(data, 1);
  for (const Record& r : data.records) CHECK(single.assign(r.id) == 0);

  const Partitioning parts = Partitioning::create(data, 10);
  const Dataset smaller = testing::remove_record(data, 17);
  const Partitioning parts2 = Partitioning::create(smaller, 10);
  for (const Record& r : smaller.records)
    CHECK(parts.assign(r.id) == parts2.assign(r.id));

  CHECK_THROWS_AS(Partitioning::create(data, 0), std::invalid_argument);
  CHECK_THROWS_AS(Partitioning::create(data, 101), std::invalid_argument);
}

TEST_CASE("hashing can leave a partition empty; run proceeds with a warning") {
  // hunt for a small dataset size / k combination with an empty partition
  bool found = false;
  for (std::size_t n = 3; n <= 6 && !found; ++n) {
    Dataset data = testing::noisy_dataset(n, 2);
    const Partitioning parts = Partitioning::create(data, static_cast<int>(n));
    if (!parts.empty_partitions.empty()) {
      found = true;
      const Dataset valid = labeled_valid(10, 0.5);
      NearestCentroidTrainer trainer;
      RandomStream stream(0, 0);
      const CandidateEvaluation eval =
          evaluate_candidate(trainer, data, parts, valid, "x", stream);
      for (int p : parts.empty_partitions)
        CHECK(eval.per_partition[static_cast<std::size_t>(p)] == 0.0);
      CHECK(eval.failed_partitions >= static_cast<int>(parts.empty_partitions.size()));
    }
  }
  CHECK(found);
}

TEST_CASE("constant predictor scores the majority fraction") {
  const Dataset train = testing::noisy_dataset(40, 3);
  const Dataset valid = labeled_valid(20, 0.4);
  const Partitioning parts = Partitioning::create(train, 4);

  const ExternalTrainer trainer(
      [](const std::vector<const Record*>&, const std::string&,
         const Dataset& v, RandomStream&) {
        std::size_t hits = 0;
        for (const Record& r : v.records)
          if (r.label == 1) ++hits;
        return static_cast<double>(hits) / static_cast<double>(v.size());
      });
  RandomStream stream(0, 0);
  const CandidateEvaluation eval =
      evaluate_candidate(trainer, train, parts, valid, "x", stream);
  for (double acc : eval.per_partition) CHECK(acc == doctest::Approx(0.4));
  CHECK(eval.mean == doctest::Approx(0.4));
}

TEST_CASE("synthetic trainer passes the table value through") {
  const Dataset train = testing::noisy_dataset(40, 4);
  const Dataset valid = labeled_valid(20, 0.5);
  const Partitioning parts = Partitioning::create(train, 5);

  const SyntheticTrainer trainer;
  RandomStream stream(0, 0);
  const CandidateEvaluation eval =
      evaluate_candidate(trainer, train, parts, valid, "0.73", stream);
  for (double acc : eval.per_partition) CHECK(acc == doctest::Approx(0.73));
  CHECK(eval.mean == doctest::Approx(0.73));

  // unparseable candidate: every partition fails and scores 0
  const CandidateEvaluation junk =
      evaluate_candidate(trainer, train, parts, valid, "not-a-number", stream);
  CHECK(junk.mean == 0.0);
  CHECK(junk.failed_partitions == 5);
}

TEST_CASE("nearest centroid is exact on a separable dataset") {
  const Dataset train = testing::separable_dataset(60, 0.1, 5);
  const Dataset valid = testing::separable_dataset(20, 0.1, 6);
  const Partitioning parts = Partitioning::create(train, 5);

  const NearestCentroidTrainer trainer;
  RandomStream stream(0, 0);
  const CandidateEvaluation eval =
      evaluate_candidate(trainer, train, parts, valid, "ignored", stream);
  CHECK(eval.mean == doctest::Approx(1.0));
  for (double acc : eval.per_partition) CHECK(acc == doctest::Approx(1.0));
}

TEST_CASE("utility table shapes and averages") {
  const Dataset train = testing::noisy_dataset(50, 7);
  const Dataset valid = labeled_valid(20, 0.5);

  const SyntheticTrainer trainer;
  RandomStream stream(0, 0);
  const UtilityTable empty =
      build_utility_table(trainer, train, valid, 5, {}, stream);
  CHECK(empty.candidate_count() == 0);

  const UtilityTable table =
      build_utility_table(trainer, train, valid, 5, {"0.3", "0.8"}, stream);
  REQUIRE(table.candidate_count() == 2);
  CHECK(table.per_candidate[0] == doctest::Approx(0.3));
  CHECK(table.per_candidate[1] == doctest::Approx(0.8));

  for (const auto& row : table.per_partition) {
    REQUIRE(row.size() == 5);
    double sum = 0.0;
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
  }
}

TEST_CASE("sensitivity: one removed record moves u_s by at most 1/k") {
  for (int k : {2, 5, 10}) {
    double max_diff = 0.0;
    for (int pair = 0; pair < 30; ++pair) {
      const Dataset data = testing::noisy_dataset(40, 100 + static_cast<std::uint64_t>(pair));
      RandomStream pick(static_cast<std::uint64_t>(pair), 5);
      const std::size_t drop = pick.next_u64() % data.size();
      const Dataset neighbor = testing::remove_record(data, drop);

      const Dataset valid = testing::noisy_dataset(30, 999);
      const NearestCentroidTrainer trainer;
      RandomStream stream(0, 0);
      const UtilityTable a =
          build_utility_table(trainer, data, valid, k, {"x"}, stream);
      const UtilityTable b =
          build_utility_table(trainer, neighbor, valid, k, {"x"}, stream);
      const double diff = std::abs(a.per_candidate[0] - b.per_candidate[0]);
      CHECK(diff <= 1.0 / k + 1e-12);
      max_diff = std::max(max_diff, diff);
    }
    CHECK(max_diff > 0.0);  // non-vacuous
  }
}
