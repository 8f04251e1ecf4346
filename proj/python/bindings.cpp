#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "triage/config.hpp"
#include "triage/errors.hpp"
#include "triage/experiments.hpp"
#include "triage/stats.hpp"
#include "triage/trace.hpp"

namespace py = pybind11;
using namespace triage;

namespace {

RunConfig make_run_config(const std::optional<std::filesystem::path> &config,
                          std::optional<std::string> policy,
                          std::optional<int> days,
                          std::optional<std::uint64_t> seed,
                          std::optional<std::string> op,
                          std::optional<double> fpr,
                          std::optional<double> max_wait,
                          std::optional<std::string> label_model,
                          std::optional<std::string> flush) {
  RunConfig rc = config ? load_config(*config) : RunConfig{};
  if (policy) {
    if (*policy == "perfect") {
      rc.policy = Policy::Prio;
      rc.op = "perfect";
    } else {
      rc.policy = parse_policy(*policy);
    }
  }
  if (days)
    rc.days = *days;
  if (seed)
    rc.seed = *seed;
  if (op)
    rc.op = *op;
  if (fpr)
    rc.fpr = fpr;
  if (max_wait)
    rc.max_wait_min = *max_wait;
  if (label_model)
    rc.label_model = parse_label_model(*label_model);
  if (flush)
    rc.flush = parse_flush_mode(*flush);
  return rc;
}

py::dict category_dict(const CategorySummary &s) {
  py::dict d;
  d["n"] = s.n;
  d["mean"] = s.mean;
  d["median"] = s.median;
  d["p95"] = s.p95;
  d["max"] = s.max;
  return d;
}

py::dict summary_dict(const RtatSummary &s) {
  py::dict d;
  for (int c = 0; c < kCategoryCount; ++c)
    d[py::str(std::string(category_name(c)))] =
        category_dict(s.categories[static_cast<std::size_t>(c)]);
  return d;
}

py::dict welch_dict(const WelchResult &w) {
  py::dict d;
  d["t"] = w.t;
  d["df"] = w.df;
  d["p"] = w.p;
  d["mean_a"] = w.mean_a;
  d["mean_b"] = w.mean_b;
  d["var_a"] = w.var_a;
  d["var_b"] = w.var_b;
  return d;
}

int category_of(const std::string &name) {
  auto c = parse_category(name);
  if (!c)
    throw ConfigError("unknown finding '" + name + "'");
  return *c;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radiology worklist triage simulator";

  auto error = py::register_exception<Error>(m, "TriageError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());

  m.attr("FINDINGS") = [] {
    py::list l;
    for (Finding f : kAllFindings)
      l.append(std::string(to_string(f)));
    return l;
  }();
  m.attr("DEFAULT_MAX_WAIT") = kDefaultMaxWait;

  m.def(
      "urgency_of",
      [](const std::vector<std::string> &findings) {
        FindingSet s;
        for (const auto &name : findings) {
          auto f = parse_finding(name);
          if (!f)
            throw ConfigError("unknown finding '" + name + "'");
          s.insert(*f);
        }
        return urgency_of(s).value();
      },
      py::arg("findings"),
      "Urgency rank (1 most urgent, 9 normal) of a set of predicted findings.");

  m.def(
      "fit_binormal",
      [](std::pair<double, double> first, std::pair<double, double> second) {
        const auto c = fit_binormal({first.first, first.second},
                                    {second.first, second.second});
        return std::pair{c.intercept, c.slope};
      },
      py::arg("first"), py::arg("second"),
      "Intercept and slope of the binormal ROC through two (fpr, tpr) points.");

  m.def(
      "binormal_tpr",
      [](double a, double b, double fpr) {
        return BinormalCurve{a, b}.tpr_at(fpr);
      },
      py::arg("a"), py::arg("b"), py::arg("fpr"));

  m.def(
      "welch_t_test",
      [](const std::vector<double> &a, const std::vector<double> &b) {
        return welch_dict(welch_t_test(a, b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "summarize",
      [](std::vector<double> samples) {
        return category_dict(summarize_samples(std::move(samples)));
      },
      py::arg("samples"), "n, mean, median, p95 and max of RTAT samples.");

  m.def(
      "run_simulation",
      [](std::optional<std::filesystem::path> config,
         std::optional<std::string> policy, std::optional<int> days,
         std::optional<std::uint64_t> seed, std::optional<std::string> op,
         std::optional<double> fpr, std::optional<double> max_wait,
         std::optional<std::string> label_model,
         std::optional<std::string> flush, int replications,
         bool with_samples) {
        const auto rc = make_run_config(config, policy, days, seed, op, fpr,
                                        max_wait, label_model, flush);
        SimulationResult r;
        {
          py::gil_scoped_release release;
          r = run_replications(rc.to_simulation_config(), replications, 1);
        }
        py::dict out;
        out["exam_count"] = r.exam_count();
        out["escalations"] = r.escalations;
        out["drain_violations"] = r.drain_violations;
        out["workload_hash"] = r.workload_hash;
        const auto s = summarize(r);
        out["overall_mean"] = s.overall_mean;
        out["summary"] = summary_dict(s);
        if (with_samples) {
          py::dict samples;
          for (int c = 0; c < kCategoryCount; ++c)
            samples[py::str(std::string(category_name(c)))] = r.rtat_samples(c);
          out["samples"] = samples;
          std::ostringstream trace;
          write_trace(trace, r);
          out["trace_csv"] = trace.str();
        }
        return out;
      },
      py::kw_only(), py::arg("config") = py::none(),
      py::arg("policy") = py::none(), py::arg("days") = py::none(),
      py::arg("seed") = py::none(), py::arg("op") = py::none(),
      py::arg("fpr") = py::none(), py::arg("max_wait") = py::none(),
      py::arg("label_model") = py::none(), py::arg("flush") = py::none(),
      py::arg("replications") = 1, py::arg("with_samples") = false,
      "Simulate one policy and return its RTAT summary.");

  m.def(
      "run_comparison",
      [](std::optional<std::filesystem::path> config, std::optional<int> days,
         std::optional<std::uint64_t> seed, std::optional<double> max_wait,
         std::optional<std::string> label_model) {
        const auto rc = make_run_config(config, std::nullopt, days, seed,
                                        std::nullopt, std::nullopt, max_wait,
                                        label_model, std::nullopt);
        ComparisonReport report;
        {
          py::gil_scoped_release release;
          report = run_comparison(rc.to_simulation_config(), rc.max_wait_min, 1);
        }
        py::dict arms;
        for (const auto &arm : report.arms) {
          py::dict d;
          d["summary"] = summary_dict(arm.summary);
          d["overall_mean"] = arm.summary.overall_mean;
          d["escalations"] = arm.escalations;
          d["workload_hash"] = arm.workload_hash;
          py::dict tests;
          for (int c = 0; c < kCategoryCount; ++c)
            if (const auto &w = report.welch(arm.arm, c))
              tests[py::str(std::string(category_name(c)))] = welch_dict(*w);
          d["welch_vs_fifo"] = tests;
          arms[py::str(std::string(to_string(arm.arm)))] = d;
        }
        py::dict out;
        out["arms"] = arms;
        out["exam_count"] = report.exam_count;
        out["workload_hash"] = report.workload_hash;
        return out;
      },
      py::kw_only(), py::arg("config") = py::none(),
      py::arg("days") = py::none(), py::arg("seed") = py::none(),
      py::arg("max_wait") = py::none(), py::arg("label_model") = py::none(),
      "Run FIFO, Prio-lowFNR, Prio-lowFPR, Prio-MAXwaiting and Perfect on "
      "one shared workload.");

  m.def(
      "run_sweep",
      [](std::optional<std::vector<double>> grid, std::string target,
         std::optional<std::filesystem::path> config, std::optional<int> days,
         std::optional<std::uint64_t> seed) {
        auto rc = make_run_config(config, std::nullopt, days, seed, std::nullopt,
                                  std::nullopt, std::nullopt, std::nullopt,
                                  std::nullopt);
        if (grid)
          rc.sweep.fpr_grid = *grid;
        rc.sweep.target_category = category_of(target);
        SweepResult sweep;
        {
          py::gil_scoped_release release;
          sweep = run_sweep(rc.sweep, rc.to_simulation_config(), 1);
        }
        py::list points;
        for (const auto &p : sweep.points) {
          py::dict d;
          d["fpr"] = p.fpr;
          d["tpr"] = p.tpr;
          d["mean_rtat"] = p.mean_rtat;
          d["n"] = p.n;
          points.append(d);
        }
        py::dict out;
        out["points"] = points;
        out["fifo_mean_rtat"] = sweep.fifo_mean_rtat;
        return out;
      },
      py::kw_only(), py::arg("grid") = py::none(),
      py::arg("target") = "pneumothorax", py::arg("config") = py::none(),
      py::arg("days") = py::none(), py::arg("seed") = py::none(),
      "Mean RTAT of the target finding along a shared-FPR sweep.");
}
