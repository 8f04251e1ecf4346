#include "triage/experiments.hpp"

#include <cstdio>
#include <future>
#include <ostream>

#include "triage/errors.hpp"

namespace triage {

std::string_view to_string(Arm arm) {
  switch (arm) {
  case Arm::Fifo:
    return "FIFO";
  case Arm::PrioLowFnr:
    return "Prio-lowFNR";
  case Arm::PrioLowFpr:
    return "Prio-lowFPR";
  case Arm::PrioMaxWaiting:
    return "Prio-MAXwaiting";
  case Arm::Perfect:
    return "Perfect";
  }
  return "?";
}

SimulationConfig arm_config(const SimulationConfig &base, Arm arm,
                            double max_wait_min) {
  SimulationConfig c = base;
  switch (arm) {
  case Arm::Fifo:
    c.policy = Policy::Fifo;
    break;
  case Arm::PrioLowFnr:
    c.policy = Policy::Prio;
    c.operating_point = OperatingPoint::low_fnr();
    break;
  case Arm::PrioLowFpr:
    c.policy = Policy::Prio;
    c.operating_point = OperatingPoint::low_fpr();
    break;
  case Arm::PrioMaxWaiting:
    c.policy = Policy::PrioMaxWait;
    c.operating_point = OperatingPoint::low_fpr();
    c.max_wait_min = max_wait_min;
    break;
  case Arm::Perfect:
    // Same queue logic as PRIO, only the classifier differs.
    c.policy = Policy::Prio;
    c.operating_point = OperatingPoint::perfect();
    break;
  }
  return c;
}

namespace {

// Runs fn(i) for i in [0, n), in parallel when threads > 1; results by index.
template <class Fn>
auto run_indexed(std::size_t n, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = fn(i);
    return out;
  }
  for (std::size_t start = 0; start < n; start += threads) {
    const std::size_t stop = std::min(n, start + threads);
    std::vector<std::future<R>> jobs;
    for (std::size_t i = start; i < stop; ++i)
      jobs.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t i = start; i < stop; ++i)
      out[i] = jobs[i - start].get();
  }
  return out;
}

} // namespace

ComparisonReport run_comparison(const SimulationConfig &cfg,
                                double max_wait_min, unsigned threads) {
  if (!(max_wait_min > 0.0))
    throw ConfigError("max_wait_min must be positive");
  const Workload workload = generate_workload(cfg);
  (void)cfg.reporting_distribution();

  auto arms = run_indexed(kArmCount, threads, [&](std::size_t i) {
    const Arm arm = kAllArms[i];
    const SimulationResult r =
        simulate(arm_config(cfg, arm, max_wait_min), workload);
    ArmResult a;
    a.arm = arm;
    a.summary = summarize(r);
    a.escalations = r.escalations;
    a.drain_violations = r.drain_violations;
    a.workload_hash = r.workload_hash;
    return a;
  });

  ComparisonReport report;
  report.workload_hash = workload.hash();
  report.exam_count = workload.exams.size();
  for (std::size_t i = 0; i < kArmCount; ++i)
    report.arms[i] = std::move(arms[i]);

  const auto &fifo = report.of(Arm::Fifo).summary;
  for (std::size_t i = 1; i < kArmCount; ++i) {
    for (int c = 0; c < kCategoryCount; ++c) {
      try {
        report.vs_fifo[i][static_cast<std::size_t>(c)] =
            welch_t_test(report.arms[i].summary.categories[c].samples,
                         fifo.categories[c].samples);
      } catch (const DegenerateSamples &) {
        // Left empty.
      }
    }
  }
  return report;
}

void write_comparison_table(std::ostream &out, const ComparisonReport &report) {
  out << "finding";
  for (Arm arm : kAllArms)
    out << ',' << to_string(arm);
  out << '\n';
  char buf[64];
  for (int c = 0; c < kCategoryCount; ++c) {
    out << category_name(c);
    for (const auto &a : report.arms) {
      const auto &s = a.summary.categories[c];
      std::snprintf(buf, sizeof buf, ",%.1f / %.0f", s.mean, s.max);
      out << buf;
    }
    out << '\n';
  }
}

void write_comparison_tests(std::ostream &out, const ComparisonReport &report) {
  out << "finding,arm,t,df,p\n";
  char buf[160];
  for (std::size_t i = 1; i < kArmCount; ++i) {
    for (int c = 0; c < kCategoryCount; ++c) {
      const auto &w = report.vs_fifo[i][static_cast<std::size_t>(c)];
      if (!w)
        continue;
      std::snprintf(buf, sizeof buf, "%s,%s,%.6g,%.6g,%.6g\n",
                    std::string(category_name(c)).c_str(),
                    std::string(to_string(kAllArms[i])).c_str(), w->t, w->df,
                    w->p);
      out << buf;
    }
  }
}

void SweepSpec::validate() const {
  if (fpr_grid.empty())
    throw ConfigError("sweep grid is empty");
  for (std::size_t i = 0; i < fpr_grid.size(); ++i) {
    if (!(fpr_grid[i] > 0.0 && fpr_grid[i] < 1.0))
      throw ConfigError("sweep FPR values must lie in (0, 1)");
    if (i > 0 && !(fpr_grid[i] > fpr_grid[i - 1]))
      throw ConfigError("sweep grid must be strictly increasing");
  }
  if (target_category < 0 || target_category >= kCategoryCount)
    throw ConfigError("sweep target category out of range");
}

SweepResult run_sweep(const SweepSpec &spec, const SimulationConfig &cfg,
                      unsigned threads) {
  spec.validate();
  const Workload workload = generate_workload(cfg);
  (void)cfg.reporting_distribution();
  const BinormalRoc roc = BinormalRoc::from_builtin_points();

  auto mean_of = [&](const SimulationConfig &c) {
    const auto r = simulate(c, workload);
    auto s = summarize_samples(r.rtat_samples(spec.target_category));
    return std::pair{s.mean, s.n};
  };

  SweepResult out;
  SimulationConfig fifo = cfg;
  fifo.policy = Policy::Fifo;
  out.fifo_mean_rtat = mean_of(fifo).first;

  out.points = run_indexed(spec.fpr_grid.size(), threads, [&](std::size_t i) {
    SimulationConfig c = cfg;
    c.policy = Policy::Prio;
    c.operating_point = operating_point_at_fpr(roc, spec.fpr_grid[i]);
    SweepPoint p;
    p.fpr = spec.fpr_grid[i];
    p.tpr = spec.target_category == kNormalCategory
                ? 0.0
                : c.operating_point.rates[static_cast<std::size_t>(
                                              spec.target_category)]
                      .tpr;
    std::tie(p.mean_rtat, p.n) = mean_of(c);
    return p;
  });
  return out;
}

void write_sweep_csv(std::ostream &out, const SweepResult &sweep) {
  out << "fpr,mean_rtat_min\n";
  char buf[96];
  for (const auto &p : sweep.points) {
    std::snprintf(buf, sizeof buf, "%.6g,%.4f\n", p.fpr, p.mean_rtat);
    out << buf;
  }
}

} // namespace triage
