// Python bindings for the simulator core: seeded runs, the closed-form
// bound calculators, and the replicated sweep runner. Long-running entry
// points release the GIL around the pure-C++ work.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <thread>

#include "umda/bitstring.hpp"
#include "umda/bounds.hpp"
#include "umda/engine.hpp"
#include "umda/fitness.hpp"
#include "umda/harness.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"

namespace py = pybind11;
using namespace umda;

namespace {

std::uint32_t resolve_workers(std::uint32_t workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

PackedBits bits_from_string(const std::string& text) {
  PackedBits bits(static_cast<std::uint32_t>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw std::invalid_argument("bit strings may contain only 0 and 1");
    }
    bits.set(static_cast<std::uint32_t>(i), text[i] == '1');
  }
  return bits;
}

py::object opt_to_py(const std::optional<std::uint32_t>& v) {
  if (v) return py::int_(*v);
  return py::none();
}

py::dict record_dict(const IterationRecord& rec) {
  py::dict d;
  d["iteration"] = rec.iteration;
  d["best_fitness"] = rec.best_fitness;
  d["critical_position"] = opt_to_py(rec.critical_position);
  d["max_selection_relevant"] = opt_to_py(rec.max_selection_relevant);
  d["min_frequency"] = rec.min_frequency;
  d["count_at_upper_border"] = rec.count_at_upper_border;
  d["count_below_quarter"] = rec.count_below_quarter;
  d["count_in_middle_band"] = rec.count_in_middle_band;
  d["best_fitness"] = rec.best_fitness;
  d["optimum_sampled"] = rec.optimum_sampled;
  return d;
}

py::dict run_py(std::uint32_t n, std::uint64_t mu, std::uint64_t lambda,
                std::uint64_t master_seed, std::uint64_t run_index,
                const std::string& fitness, std::uint64_t max_iterations,
                bool collect_trace) {
  UmdaParams params;
  params.n = n;
  params.mu = mu;
  params.lambda = lambda;
  params.master_seed = master_seed;
  params.max_iterations =
      max_iterations > 0 ? max_iterations : UmdaParams::default_max_iterations(n);
  const FitnessKind kind = FitnessKind::parse(fitness);

  RunOutcome out;
  {
    py::gil_scoped_release release;
    RunOptions opts;
    opts.run_index = run_index;
    opts.collect_trace = collect_trace;
    out = run_umda(params, kind, opts);
  }

  py::dict d;
  d["n"] = params.n;
  d["mu"] = params.mu;
  d["lambda"] = params.lambda;
  d["master_seed"] = params.master_seed;
  d["run_index"] = run_index;
  d["fitness"] = kind.name();
  d["max_iterations"] = params.max_iterations;
  d["found_optimum"] = out.found_optimum;
  d["iterations_completed"] = out.iterations_completed;
  if (out.first_optimum_eval_index) {
    d["first_optimum_eval_index"] = *out.first_optimum_eval_index;
  } else {
    d["first_optimum_eval_index"] = py::none();
  }
  d["evaluations_used"] = out.evaluations_used;
  d["final_critical_position"] = opt_to_py(critical_position(out.final_frequencies));
  d["final_min_frequency"] = out.final_frequencies.min_value();
  d["final_frequencies"] = out.final_frequencies.values;
  if (collect_trace) {
    py::list trace;
    for (const IterationRecord& rec : out.trace.records) {
      trace.append(record_dict(rec));
    }
    d["trace"] = trace;
  }
  return d;
}

py::dict bound_report_py(std::uint32_t n, std::uint64_t mu,
                         std::uint64_t lambda, double delta) {
  const BoundReport r = make_bound_report(n, mu, lambda, delta);
  py::dict d;
  d["n"] = r.n;
  d["mu"] = r.mu;
  d["lambda"] = r.lambda;
  d["delta"] = r.delta;
  d["zeta_upper"] = r.zeta_upper;
  d["zeta_lower"] = r.zeta_lower;
  d["d_upper"] = r.d_upper;
  d["d_lower"] = r.d_lower;
  d["xi"] = r.xi;
  d["upper_bound_defined"] = r.upper_bound_defined;
  if (r.upper_bound_defined) {
    d["upper_bound_iterations"] = r.upper_bound_iterations;
    d["upper_bound_evaluations"] = r.upper_bound_evaluations;
  } else {
    d["upper_bound_iterations"] = py::none();
    d["upper_bound_evaluations"] = py::none();
  }
  d["lower_bound_trivial"] = r.lower_bound_trivial;
  d["lower_bound_iterations"] = r.lower_bound_iterations;
  d["lower_bound_evaluations"] = r.lower_bound_evaluations;
  d["regime_upper_ok"] = r.regime_upper_ok;
  d["regime_lower_ok"] = r.regime_lower_ok;
  d["regime_upper_ceil_variant_ok"] = r.regime_upper_ceil_variant_ok;
  d["mu_threshold_upper"] = r.mu_threshold_upper;
  d["mu_threshold_lower"] = r.mu_threshold_lower;
  d["mu_progress_lemma_threshold"] = r.mu_progress_lemma_threshold;
  d["mu_band_lemma_threshold"] = r.mu_band_lemma_threshold;
  d["failure_prob_upper"] = r.failure_prob_upper;
  d["failure_prob_lower"] = r.failure_prob_lower;
  d["conjectured_evaluations"] = r.conjectured_evaluations;
  return d;
}

std::string sweep_summary_py(const std::string& config_text,
                             std::uint32_t workers) {
  const ExperimentConfig cfg = parse_experiment_config(config_text);
  const std::vector<AggregateResult> aggs =
      run_sweep(cfg, resolve_workers(workers));
  return summary_json(cfg, aggs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Instrumented univariate EDA on LeadingOnes: seeded runs, "
            "closed-form runtime-bound calculators, replicated sweeps.";

  m.def("run", &run_py, py::arg("n"), py::arg("mu"), py::arg("lambda_"),
        py::arg("master_seed") = 0, py::arg("run_index") = 0,
        py::arg("fitness") = "leading_ones", py::arg("max_iterations") = 0,
        py::arg("collect_trace") = false,
        "One seeded run; returns the outcome as a dictionary (with the "
        "per-iteration trace when collect_trace is set).");

  m.def("bound_report", &bound_report_py, py::arg("n"), py::arg("mu"),
        py::arg("lambda_"), py::arg("delta") = 0.5,
        "Evaluate every closed-form runtime bound for one configuration.");

  m.def("sweep_summary", &sweep_summary_py, py::arg("config_text"),
        py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>(),
        "Run a replicated sweep from a JSON config string; returns the "
        "summary as a JSON string.");

  m.def("default_sweep_config", &default_sweep_config_json,
        "The built-in sweep configuration as a JSON string.");

  m.def(
      "evaluate",
      [](const std::string& kind, const std::string& bits) {
        return evaluate_fitness(FitnessKind::parse(kind), bits_from_string(bits));
      },
      py::arg("kind"), py::arg("bits"),
      "Evaluate a fitness kind (e.g. \"leading_ones\", \"one_max\", "
      "\"neutral_suffix:2\") on a literal bit string.");

  m.def("d_upper", &d_upper, py::arg("delta"), py::arg("lambda_"),
        py::arg("mu"), "Per-iteration progress depth used by the upper bound.");
  m.def("d_lower", &d_lower, py::arg("delta"), py::arg("lambda_"),
        py::arg("mu"), "Per-iteration progress cap used by the lower bound.");
  m.def("xi", &xi, py::arg("n"), py::arg("lambda_"),
        "Position cutoff entering the lower bound.");
  m.def("upper_bound_iterations", &upper_bound_iterations, py::arg("n"),
        py::arg("d"), "Iteration count of the high-probability upper bound.");
  m.def("lower_bound_iterations", &lower_bound_iterations, py::arg("n"),
        py::arg("xi_value"), py::arg("d"),
        "Iteration count of the high-probability lower bound.");
  m.def("chernoff_lower_tail", &chernoff_lower_tail, py::arg("expectation"),
        py::arg("delta"),
        "exp(-delta^2 E / 2): bound on P[X <= (1 - delta) E].");
  m.def("chernoff_upper_tail", &chernoff_upper_tail, py::arg("expectation"),
        py::arg("delta"),
        "exp(-delta^2 E / 3): bound on P[X >= (1 + delta) E].");
  m.def("drift_band_exit_bound", &drift_band_exit_bound, py::arg("d"),
        py::arg("mu"), py::arg("t"),
        "min(1, 2 exp(-d^2 mu / (2 t))): neutral-frequency band exit bound.");
  m.def("conjectured_bound", &conjectured_bound, py::arg("n"), py::arg("mu"),
        py::arg("lambda_"),
        "Order-of-magnitude runtime guess; hidden constants unknown.");

  m.attr("__version__") = "1.0.0";
}
