#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dpht/accountant.hpp"
#include "support.hpp"

using namespace dpht;

TEST_CASE("worst-case iteration cap") {
  CHECK(worst_case_iterations(0.01, 0.0) == 201);
  CHECK(worst_case_iterations(0.5, 0.0) == 5);
  CHECK(worst_case_iterations(0.5, 0.5) == 3);

  CHECK_THROWS_AS(worst_case_iterations(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_iterations(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_iterations(0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(worst_case_iterations(0.1, -0.1), std::invalid_argument);
}

TEST_CASE("no schedule of length <= 16 exceeds the cap (exhaustive oracle)") {
  CHECK(testing::max_count_over_schedules(0.5, 0.0, 16) <= worst_case_iterations(0.5, 0.0));
  CHECK(testing::max_count_over_schedules(0.5, 0.5, 16) <= worst_case_iterations(0.5, 0.5));
  CHECK(testing::max_count_over_schedules(0.34, 0.0, 16) <= worst_case_iterations(0.34, 0.0));
}

TEST_CASE("random and adversarial schedules respect the cap at g=0.01") {
  const long cap = worst_case_iterations(0.01, 0.0);

  std::vector<bool> alternating(300);
  for (std::size_t i = 0; i < alternating.size(); i += 2) alternating[i] = true;
  const long alternating_count = testing::schedule_run_count(alternating, 0.01, 0.0);
  CHECK(alternating_count <= cap);
  // The alternating schedule gains exactly g every two iterations.
  CHECK(alternating_count == 199);

  RandomStream rng(2024, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<bool> schedule(300);
    for (std::size_t i = 0; i < schedule.size(); ++i)
      schedule[i] = rng.next_u64() & 1;
    CHECK(testing::schedule_run_count(schedule, 0.01, 0.0) <= cap);
  }
}

TEST_CASE("basic composition is T * eps0") {
  CHECK(basic_composition(0, 0.1) == doctest::Approx(0.0));
  CHECK(basic_composition(10, 0.1) == doctest::Approx(1.0));
  CHECK(basic_composition(201, 0.1) == doctest::Approx(20.1));
  CHECK_THROWS_AS(basic_composition(-1, 0.1), std::invalid_argument);
}

TEST_CASE("advanced composition closed form") {
  const AdvancedCost zero = advanced_composition(0, 0.1, 1e-6);
  CHECK(zero.eps_additional == doctest::Approx(0.0));
  CHECK(zero.delta_additional == doctest::Approx(1e-6));

  // looser than basic for tiny T
  CHECK(advanced_composition(1, 0.1, 1e-6).eps_additional > basic_composition(1, 0.1));
  CHECK(advanced_composition(1, 0.1, 1e-6).eps_additional ==
        doctest::Approx(0.5361692687832580).epsilon(1e-12));

  // frozen from a high-precision evaluation of
  // sqrt(2*200*ln(1e6))*0.1 + 200*0.1*(e^0.1 - 1)
  CHECK(advanced_composition(200, 0.1, 1e-6).eps_additional ==
        doctest::Approx(9.537262739212629).epsilon(1e-12));

  CHECK_THROWS_AS(advanced_composition(10, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(advanced_composition(10, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("total privacy combines loop cost with the final run") {
  const PrivacyParams params{1.0, 1e-5, 0.1};

  const CompositionReport basic0 =
      total_privacy(params, 0, 1e-6, CompositionMethod::kBasic);
  CHECK(basic0.eps_total == doctest::Approx(1.0));
  CHECK(basic0.delta_total == doctest::Approx(1e-5));

  const CompositionReport adv0 =
      total_privacy(params, 0, 1e-6, CompositionMethod::kAdvanced);
  CHECK(adv0.eps_total == doctest::Approx(1.0));
  CHECK(adv0.delta_total == doctest::Approx(1e-5 + 1e-6));

  const CompositionReport basic201 =
      total_privacy(params, 201, 1e-6, CompositionMethod::kBasic);
  CHECK(basic201.eps_total == doctest::Approx(21.1));

  const CompositionReport adv201 =
      total_privacy(params, 201, 1e-6, CompositionMethod::kAdvanced);
  CHECK(adv201.eps_total ==
        doctest::Approx(1.0 + advanced_composition(201, 0.1, 1e-6).eps_additional));
  CHECK(adv201.eps_total == doctest::Approx(1.0 + 9.566341269096815).epsilon(1e-12));
}

TEST_CASE("eps_additional is monotone in T and eps0") {
  double prev_basic = -1.0, prev_adv = -1.0;
  for (long t = 0; t <= 500; t += 25) {
    const double b = basic_composition(t, 0.1);
    const double a = advanced_composition(t, 0.1, 1e-6).eps_additional;
    CHECK(b >= prev_basic);
    CHECK(a >= prev_adv);
    prev_basic = b;
    prev_adv = a;
  }
  prev_basic = prev_adv = -1.0;
  for (double eps0 = 0.01; eps0 <= 1.0; eps0 += 0.05) {
    const double b = basic_composition(100, eps0);
    const double a = advanced_composition(100, eps0, 1e-6).eps_additional;
    CHECK(b >= prev_basic);
    CHECK(a >= prev_adv);
    prev_basic = b;
    prev_adv = a;
  }
}

TEST_CASE("advanced beats basic beyond the crossover") {
  const long crossover = composition_crossover(0.1, 1e-6, 10000);
  REQUIRE(crossover > 0);
  CHECK(advanced_composition(crossover - 1, 0.1, 1e-6).eps_additional >=
        basic_composition(crossover - 1, 0.1));
  for (long t = crossover; t <= 10000; t += (t < crossover + 50 ? 1 : 97)) {
    CHECK(advanced_composition(t, 0.1, 1e-6).eps_additional <
          basic_composition(t, 0.1));
  }
}

TEST_CASE("budget comparison table") {
  const PrivacyParams params{1.0, 1e-5, 0.1};

  const BudgetComparisonTable table =
      budget_comparison(params, 100, 20, 0.01, 0.0, 1e-6);
  REQUIRE(table.rows.size() == 4);

  CHECK(table.rows[0].method == "naive");
  CHECK(table.rows[1].method == "randtune");
  REQUIRE(table.rows[1].eps.size() == 2);
  CHECK(table.rows[1].eps[0] == doctest::Approx(2.0));
  CHECK(table.rows[1].eps[1] == doctest::Approx(3.0));

  CHECK(table.rows[2].eps[0] ==
        doctest::Approx(total_privacy(params, 20, 1e-6, CompositionMethod::kAdvanced)
                            .eps_total));
  CHECK(table.rows[3].eps[0] ==
        doctest::Approx(total_privacy(params, 201, 1e-6, CompositionMethod::kAdvanced)
                            .eps_total));

  // |S| = 1: naive row is a single run's advanced-composition cost at T = 1
  const BudgetComparisonTable single =
      budget_comparison(params, 1, 0, 0.01, 0.0, 1e-6);
  CHECK(single.rows[0].eps[0] ==
        doctest::Approx(advanced_composition(1, params.eps, 1e-6).eps_additional));

  CHECK_THROWS_AS(budget_comparison(params, 0, 0, 0.01, 0.0, 1e-6),
                  std::invalid_argument);
}
