#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dpht {

// Privacy knobs: eps/delta for the final training run, eps0 for each loop
// iteration.
struct PrivacyParams {
  double eps;
  double delta;
  double eps0;

  void validate() const;
};

enum class CompositionMethod { kBasic, kAdvanced };

struct CompositionReport {
  long iterations = 0;
  double eps_additional = 0.0;
  double delta_additional = 0.0;
  double eps_total = 0.0;
  double delta_total = 0.0;
  CompositionMethod method = CompositionMethod::kBasic;
};

// Hard cap on the loop's iteration count for any noise realization:
// ceil(2*(1-u0)/g) + 1. Each accumulating iteration adds at least g, a
// non-accumulating one halves the step, and the step (a power of two or 0)
// can be halved at most once more than it was doubled.
long worst_case_iterations(double g, double u0);

// T*eps0.
double basic_composition(long iterations, double eps0);

struct AdvancedCost {
  double eps_additional;
  double delta_additional;
};

// Strong composition over T eps0-DP mechanisms with slack delta_slack:
//   sqrt(2 T ln(1/delta_slack)) * eps0 + T * eps0 * (e^eps0 - 1).
AdvancedCost advanced_composition(long iterations, double eps0, double delta_slack);

// Loop cost composed with the final (eps, delta) training run.
CompositionReport total_privacy(const PrivacyParams& params, long iterations,
                                double delta_slack, CompositionMethod method);

// Smallest T at which the advanced bound drops below T*eps0, scanning up to
// max_iterations; returns -1 if no crossover is found in range.
long composition_crossover(double eps0, double delta_slack, long max_iterations);

struct BudgetRow {
  std::string method;
  std::vector<double> eps;  // one or two figures (RandTune reports both 2e and 3e)
  double delta;
  std::string note;
};

struct BudgetComparisonTable {
  std::vector<BudgetRow> rows;
};

// Table comparing: naive per-candidate search under advanced composition,
// RandTune's published 2e/3e constants, and this framework's total at both
// the observed and the worst-case iteration count.
BudgetComparisonTable budget_comparison(const PrivacyParams& params,
                                        std::size_t candidate_count,
                                        long iterations_observed, double g,
                                        double u0, double delta_slack);

}  // namespace dpht
