#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpht/accountant.hpp"
#include "dpht/mechanisms.hpp"
#include "dpht/simulation.hpp"
#include "dpht/tuner.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace dpht;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differentially private hyperparameter tuning: propose-test loop "
            "with doubling step";

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream_id"))
      .def("next_u64", &RandomStream::next_u64)
      .def("next_unit", &RandomStream::next_unit)
      .def("derive", &RandomStream::derive);

  py::class_<LaplaceScale>(m, "LaplaceScale")
      .def(py::init<double>())
      .def_readonly("b", &LaplaceScale::b);

  m.def("threshold_noise_scale", &threshold_noise_scale, py::arg("k"),
        py::arg("eps0"));
  m.def("query_noise_scale", &query_noise_scale, py::arg("k"), py::arg("eps0"));
  m.def("laplace_sample", &laplace_sample);
  m.def("laplace_quantile", &laplace_quantile);

  py::class_<PrivacyParams>(m, "PrivacyParams")
      .def(py::init([](double eps, double delta, double eps0) {
             PrivacyParams p{eps, delta, eps0};
             p.validate();
             return p;
           }),
           py::arg("eps"), py::arg("delta"), py::arg("eps0"))
      .def_readwrite("eps", &PrivacyParams::eps)
      .def_readwrite("delta", &PrivacyParams::delta)
      .def_readwrite("eps0", &PrivacyParams::eps0);

  py::enum_<CompositionMethod>(m, "CompositionMethod")
      .value("basic", CompositionMethod::kBasic)
      .value("advanced", CompositionMethod::kAdvanced);

  py::class_<CompositionReport>(m, "CompositionReport")
      .def_readonly("iterations", &CompositionReport::iterations)
      .def_readonly("eps_additional", &CompositionReport::eps_additional)
      .def_readonly("delta_additional", &CompositionReport::delta_additional)
      .def_readonly("eps_total", &CompositionReport::eps_total)
      .def_readonly("delta_total", &CompositionReport::delta_total)
      .def_readonly("method", &CompositionReport::method);

  m.def("worst_case_iterations", &worst_case_iterations, py::arg("g"),
        py::arg("u0"));
  m.def("basic_composition", &basic_composition);
  m.def("advanced_composition",
        [](long t, double eps0, double delta_slack) {
          const AdvancedCost c = advanced_composition(t, eps0, delta_slack);
          return py::make_tuple(c.eps_additional, c.delta_additional);
        },
        py::arg("iterations"), py::arg("eps0"), py::arg("delta_slack"));
  m.def("total_privacy", &total_privacy, py::arg("params"), py::arg("iterations"),
        py::arg("delta_slack"), py::arg("method"));
  m.def("budget_comparison",
        [](const PrivacyParams& params, std::size_t candidates, long t,
           double g, double u0, double delta_slack) {
          py::list rows;
          for (const BudgetRow& row :
               budget_comparison(params, candidates, t, g, u0, delta_slack).rows) {
            rows.append(py::dict("method"_a = row.method, "eps"_a = row.eps,
                                 "delta"_a = row.delta, "note"_a = row.note));
          }
          return rows;
        },
        py::arg("params"), py::arg("candidates"), py::arg("iterations"),
        py::arg("g"), py::arg("u0"), py::arg("delta_slack") = 1e-6);

  py::enum_<Termination>(m, "Termination")
      .value("step_exhausted", Termination::kStepExhausted)
      .value("utility_cap", Termination::kUtilityCap);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("iteration", &IterationRecord::iteration)
      .def_readonly("proposed_threshold", &IterationRecord::proposed_threshold)
      .def_readonly("scanned", &IterationRecord::scanned)
      .def_readonly("accepted", &IterationRecord::accepted)
      .def_readonly("u_after", &IterationRecord::u_after)
      .def_readonly("step_after", &IterationRecord::step_after);

  py::class_<TuningOutcome>(m, "TuningOutcome")
      .def_readonly("selected", &TuningOutcome::selected)
      .def_readonly("u_final", &TuningOutcome::u_final)
      .def_readonly("iterations", &TuningOutcome::iterations)
      .def_readonly("termination", &TuningOutcome::termination)
      .def_readonly("trace", &TuningOutcome::trace)
      .def_readonly("privacy", &TuningOutcome::privacy);

  // Tuning over a synthetic utility table (the simulation path): utilities
  // are given directly, no training involved.
  m.def("tune_utilities",
        [](const std::vector<double>& utilities, int k, double g, double u0,
           double eps0, std::uint64_t seed) {
          TuningConfig config;
          config.candidates.resize(utilities.size());
          config.k = k;
          config.g = g;
          config.u0 = u0;
          config.privacy = {1.0, 1e-5, eps0};
          const UtilityTable table = utility_table_from_values(utilities, k);
          RandomStream stream(seed, 0);
          return run_tuning(config, table, stream);
        },
        py::arg("utilities"), py::arg("k"), py::arg("g"), py::arg("u0"),
        py::arg("eps0"), py::arg("seed"));

  py::class_<SimulatedRun>(m, "SimulatedRun")
      .def_readonly("seed", &SimulatedRun::seed)
      .def_readonly("outcome", &SimulatedRun::outcome);

  py::class_<SimulationSpec>(m, "SimulationSpec")
      .def(py::init<>())
      .def_readwrite("n_candidates", &SimulationSpec::n_candidates)
      .def_readwrite("k", &SimulationSpec::k)
      .def_readwrite("g", &SimulationSpec::g)
      .def_readwrite("u0", &SimulationSpec::u0)
      .def_readwrite("eps0", &SimulationSpec::eps0)
      .def_readwrite("n_seeds", &SimulationSpec::n_seeds)
      .def_readwrite("base_seed", &SimulationSpec::base_seed);

  m.def("simulate_traces", &simulate_traces);
  m.def("utility_cap_fraction", &utility_cap_fraction);
  m.def("worst_case_trace", &worst_case_trace, py::arg("g"), py::arg("u0"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("mean_iterations", &SweepRow::mean_iterations)
      .def_readonly("max_iterations", &SweepRow::max_iterations)
      .def_readonly("std_iterations", &SweepRow::std_iterations)
      .def_readonly("n_seeds", &SweepRow::n_seeds);

  m.def("sweep_iterations",
        [](const std::vector<long>& ratios, std::size_t n_seeds,
           std::size_t n_candidates, int k, double eps0, std::uint64_t base_seed) {
          SweepSpec spec;
          spec.ratios = ratios;
          spec.n_seeds = n_seeds;
          spec.n_candidates = n_candidates;
          spec.k = k;
          spec.eps0 = eps0;
          spec.base_seed = base_seed;
          return sweep_iterations(spec);
        },
        py::arg("ratios"), py::arg("n_seeds") = 200, py::arg("n_candidates") = 100,
        py::arg("k") = 10, py::arg("eps0") = 0.1, py::arg("base_seed") = 0);
}
