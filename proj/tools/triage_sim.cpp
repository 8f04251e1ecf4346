// triage-sim: command line front end for the worklist simulator.
//
//   triage-sim run     --policy fifo|prio|prio-maxwait|perfect [--op ...] [--fpr X]
//   triage-sim compare [--config FILE] [--days N --seed S --max-wait M]
//   triage-sim sweep   [--config FILE] [--grid 0.01,0.02,...]
//   triage-sim ttest   A.csv B.csv --finding NAME
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "triage/config.hpp"
#include "triage/errors.hpp"
#include "triage/experiments.hpp"
#include "triage/stats.hpp"
#include "triage/trace.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonOptions {
  std::string config;
  std::optional<int> days;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_wait;
  std::optional<int> replications;
  bool full_scale = false;
  unsigned threads = 1;
};

// Length of the published Monte-Carlo experiment.
constexpr int kFullScaleDays = 11000;

void add_common(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--config", o.config, "INI configuration file");
  auto *days = cmd->add_option("--days", o.days, "Simulated days");
  cmd->add_flag("--full-scale", o.full_scale, "Simulate 11000 days")
      ->excludes(days);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--max-wait", o.max_wait, "Maximum waiting time in minutes");
  cmd->add_option("--threads", o.threads, "Worker threads")->default_val(1);
}

triage::RunConfig base_config(const CommonOptions &o) {
  triage::RunConfig cfg;
  if (!o.config.empty())
    cfg = triage::load_config(o.config);
  if (o.days)
    cfg.days = *o.days;
  if (o.full_scale)
    cfg.days = kFullScaleDays;
  if (o.seed)
    cfg.seed = *o.seed;
  if (o.max_wait)
    cfg.max_wait_min = *o.max_wait;
  if (o.replications)
    cfg.replications = *o.replications;
  return cfg;
}

template <class Fn> void write_file(const std::filesystem::path &path, Fn fn) {
  std::ofstream out(path);
  if (!out)
    throw triage::ConfigError("cannot write " + path.string());
  fn(out);
}

int cmd_run(const CommonOptions &o, const std::string &policy,
            const std::string &op, std::optional<double> fpr,
            const std::string &trace, const std::string &summary,
            const std::string &audit) {
  auto rc = base_config(o);
  if (!policy.empty()) {
    if (policy == "perfect") {
      rc.policy = triage::Policy::Prio;
      rc.op = "perfect";
      rc.fpr.reset();
      rc.operating_point_file.clear();
    } else {
      rc.policy = triage::parse_policy(policy);
    }
  }
  if (!op.empty())
    rc.op = op;
  if (fpr)
    rc.fpr = fpr;
  if (!trace.empty())
    rc.trace_file = trace;
  if (!summary.empty())
    rc.summary_file = summary;
  if (!audit.empty())
    rc.audit_file = audit;

  const auto sim = rc.to_simulation_config();
  triage::SimulationResult result;
  if (!rc.audit_file.empty()) {
    if (rc.replications != 1)
      throw triage::ConfigError("the audit log needs a single replication");
    std::ofstream log(rc.audit_file);
    if (!log)
      throw triage::ConfigError("cannot write " + rc.audit_file.string());
    log << triage::kAuditHeader << '\n';
    result = triage::run_simulation(sim, &log);
  } else {
    result = triage::run_replications(sim, rc.replications, o.threads);
  }

  const auto s = triage::summarize(result);
  if (!rc.trace_file.empty())
    write_file(rc.trace_file,
               [&](std::ostream &out) { triage::write_trace(out, result); });
  if (!rc.summary_file.empty())
    write_file(rc.summary_file,
               [&](std::ostream &out) { triage::write_summary_csv(out, s); });

  triage::write_summary_csv(std::cout, s);
  std::printf("# exams=%zu overall_mean=%.2f escalations=%zu drain_violations=%zu\n",
              result.exam_count(), s.overall_mean, result.escalations,
              result.drain_violations);
  return 0;
}

int cmd_compare(const CommonOptions &o, const std::string &tests_out) {
  auto rc = base_config(o);
  const auto sim = rc.to_simulation_config();
  const auto report = triage::run_comparison(sim, rc.max_wait_min, o.threads);
  triage::write_comparison_table(std::cout, report);
  if (!tests_out.empty())
    write_file(tests_out, [&](std::ostream &out) {
      triage::write_comparison_tests(out, report);
    });
  else
    triage::write_comparison_tests(std::cout, report);
  std::printf("# exams=%zu workload_hash=%016llx\n", report.exam_count,
              static_cast<unsigned long long>(report.workload_hash));
  return 0;
}

int cmd_sweep(const CommonOptions &o, const std::string &grid,
              const std::string &target, const std::string &out_path) {
  auto rc = base_config(o);
  if (!grid.empty())
    rc.sweep.fpr_grid = triage::parse_number_list(grid);
  if (!target.empty()) {
    auto c = triage::parse_category(target);
    if (!c)
      throw triage::ConfigError("unknown finding '" + target + "'");
    rc.sweep.target_category = *c;
  }
  const auto sim = rc.to_simulation_config();
  const auto sweep = triage::run_sweep(rc.sweep, sim, o.threads);
  if (!out_path.empty())
    write_file(out_path,
               [&](std::ostream &out) { triage::write_sweep_csv(out, sweep); });
  triage::write_sweep_csv(std::cout, sweep);
  std::printf("# fifo_mean_rtat=%.4f\n", sweep.fifo_mean_rtat);
  return 0;
}

int cmd_ttest(const std::string &a, const std::string &b,
              const std::string &finding) {
  const auto category = triage::parse_category(finding);
  if (!category)
    throw triage::ConfigError("unknown finding '" + finding + "'");
  const auto sa = triage::trace_samples(triage::read_trace(a), *category);
  const auto sb = triage::trace_samples(triage::read_trace(b), *category);
  triage::WelchResult w;
  try {
    w = triage::welch_t_test(sa, sb);
  } catch (const triage::DegenerateSamples &e) {
    throw triage::DataError(e.what());
  }
  std::printf("t=%.6g df=%.6g p=%.6g\n", w.t, w.df, w.p);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Radiology worklist triage simulator"};
  app.require_subcommand(1);

  CommonOptions run_o, cmp_o, sweep_o;

  auto *run = app.add_subcommand("run", "Simulate one policy");
  add_common(run, run_o);
  run->add_option("--replications", run_o.replications, "Replications");
  std::string policy, op, trace, summary, audit;
  std::optional<double> fpr;
  run->add_option("--policy", policy, "fifo | prio | prio-maxwait | perfect");
  run->add_option("--op", op, "low-fpr | low-fnr | perfect");
  run->add_option("--fpr", fpr, "Shared FPR on the fitted ROC curves");
  run->add_option("--trace", trace, "Per-exam trace CSV");
  run->add_option("--summary", summary, "Summary CSV");
  run->add_option("--audit", audit, "Worklist event log CSV");

  auto *compare = app.add_subcommand("compare", "Compare all five arms");
  add_common(compare, cmp_o);
  std::string tests_out;
  compare->add_option("--tests", tests_out, "Write Welch results to this CSV");

  auto *sweep = app.add_subcommand("sweep", "Operating point sweep");
  add_common(sweep, sweep_o);
  std::string grid, target, sweep_out;
  sweep->add_option("--grid", grid, "Comma-separated FPR values");
  sweep->add_option("--target", target, "Target finding")->default_val("");
  sweep->add_option("--out", sweep_out, "Write the sweep CSV here too");

  auto *ttest = app.add_subcommand("ttest", "Welch t-test between two traces");
  std::string trace_a, trace_b, finding;
  ttest->add_option("a", trace_a, "First trace CSV")->required();
  ttest->add_option("b", trace_b, "Second trace CSV")->required();
  ttest->add_option("--finding", finding, "Finding or 'normal'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run)
      return cmd_run(run_o, policy, op, fpr, trace, summary, audit);
    if (*compare)
      return cmd_compare(cmp_o, tests_out);
    if (*sweep)
      return cmd_sweep(sweep_o, grid, target, sweep_out);
    if (*ttest)
      return cmd_ttest(trace_a, trace_b, finding);
  } catch (const triage::DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const triage::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const triage::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
