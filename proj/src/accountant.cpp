#include "dpht/accountant.hpp"

#include <cmath>
#include <stdexcept>

namespace dpht {

void PrivacyParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("eps must be positive and finite");
  if (!(eps0 > 0.0) || !std::isfinite(eps0))
    throw std::invalid_argument("eps0 must be positive and finite");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("delta must lie in (0,1)");
}

long worst_case_iterations(double g, double u0) {
  if (!(g > 0.0) || !(g < 1.0))
    throw std::invalid_argument("g must lie in (0,1)");
  if (!(u0 >= 0.0) || !(u0 < 1.0))
    throw std::invalid_argument("u0 must lie in [0,1)");
  return static_cast<long>(std::ceil(2.0 * (1.0 - u0) / g)) + 1;
}

double basic_composition(long iterations, double eps0) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  return static_cast<double>(iterations) * eps0;
}

AdvancedCost advanced_composition(long iterations, double eps0, double delta_slack) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  if (!(delta_slack > 0.0) || !(delta_slack < 1.0))
    throw std::invalid_argument("delta_slack must lie in (0,1)");
  const double t = static_cast<double>(iterations);
  const double eps_add =
      std::sqrt(2.0 * t * std::log(1.0 / delta_slack)) * eps0 + t * eps0 * std::expm1(eps0);
  return {eps_add, delta_slack};
}

CompositionReport total_privacy(const PrivacyParams& params, long iterations,
                                double delta_slack, CompositionMethod method) {
  params.validate();
  CompositionReport report;
  report.iterations = iterations;
  report.method = method;
  if (method == CompositionMethod::kBasic) {
    report.eps_additional = basic_composition(iterations, params.eps0);
    report.delta_additional = 0.0;
  } else {
    const AdvancedCost cost = advanced_composition(iterations, params.eps0, delta_slack);
    report.eps_additional = cost.eps_additional;
    report.delta_additional = cost.delta_additional;
  }
  // The two phases (loop, final training) compose basically.
  report.eps_total = params.eps + report.eps_additional;
  report.delta_total = params.delta + report.delta_additional;
  return report;
}

long composition_crossover(double eps0, double delta_slack, long max_iterations) {
  for (long t = 1; t <= max_iterations; ++t) {
    if (advanced_composition(t, eps0, delta_slack).eps_additional <
        basic_composition(t, eps0)) {
      return t;
    }
  }
  return -1;
}

BudgetComparisonTable budget_comparison(const PrivacyParams& params,
                                        std::size_t candidate_count,
                                        long iterations_observed, double g,
                                        double u0, double delta_slack) {
  params.validate();
  if (candidate_count == 0)
    throw std::invalid_argument("candidate_count must be positive");

  BudgetComparisonTable table;

  // Naive grid search: |S| full training runs at eps each, composed with the
  // strong bound.
  const AdvancedCost naive = advanced_composition(
      static_cast<long>(candidate_count), params.eps, delta_slack);
  table.rows.push_back({"naive", {naive.eps_additional},
                        params.delta + naive.delta_additional,
                        "advanced composition over |S| runs at eps"});

  table.rows.push_back({"randtune", {2.0 * params.eps, 3.0 * params.eps},
                        params.delta, "published constants 2eps / 3eps"});

  const CompositionReport empirical = total_privacy(
      params, iterations_observed, delta_slack, CompositionMethod::kAdvanced);
  table.rows.push_back({"ours_empirical", {empirical.eps_total},
                        empirical.delta_total,
                        "T = " + std::to_string(iterations_observed) + " (observed)"});

  const long cap = worst_case_iterations(g, u0);
  const CompositionReport worst =
      total_privacy(params, cap, delta_slack, CompositionMethod::kAdvanced);
  table.rows.push_back({"ours_worst_case", {worst.eps_total}, worst.delta_total,
                        "T = " + std::to_string(cap) + " (a priori cap)"});
  return table;
}

}  // namespace dpht
