// Acceptance suite: one PASS/FAIL line per criterion.
//
//   triage_acceptance [--days N]
//
// Runs the calibrated five-arm comparison and the FPR sweep on the shipped
// synthetic distributions, plus the exact oracle checks. Exit status is 0
// once every criterion has been evaluated; the verdicts are in the output.
// Pass --strict to exit 1 when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "triage/classifier.hpp"
#include "triage/engine.hpp"
#include "triage/experiments.hpp"
#include "triage/stats.hpp"
#include "triage/trace.hpp"

using namespace triage;

namespace {

// Enough days for at least 10^5 exams at the calibrated volume.
constexpr int kDefaultDays = 1100;
constexpr std::uint64_t kSeed = 20191105;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      if (!detail.empty())
        detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double mean_of(const ComparisonReport &r, Arm arm, int category) {
  return r.of(arm).summary.categories[static_cast<std::size_t>(category)].mean;
}

double max_of(const ComparisonReport &r, Arm arm, int category) {
  return r.of(arm).summary.categories[static_cast<std::size_t>(category)].max;
}

constexpr int kPneumo = index_of(Finding::Pneumothorax);
constexpr int kForeign = index_of(Finding::ForeignObject);

Verdict fifo_calibration(const ComparisonReport &r) {
  Verdict v;
  const double overall = r.of(Arm::Fifo).summary.overall_mean;
  double lo = 1e300, hi = 0;
  for (int c = 0; c < kCategoryCount; ++c) {
    lo = std::min(lo, mean_of(r, Arm::Fifo, c));
    hi = std::max(hi, mean_of(r, Arm::Fifo, c));
  }
  const double spread = hi / lo - 1.0;
  v.require(overall >= 64.0 && overall <= 96.0,
            fmt("overall mean %.2f outside [64, 96]", overall));
  v.require(spread <= 0.05, fmt("category spread %.2f%% > 5%%", 100 * spread));
  v.detail = fmt("mean %.2f min, spread %.2f%%", overall, 100 * spread) +
             (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict pneumothorax_reduction(const ComparisonReport &r) {
  Verdict v;
  const double fifo = mean_of(r, Arm::Fifo, kPneumo);
  const double prio = mean_of(r, Arm::PrioLowFpr, kPneumo);
  const double reduction = 1.0 - prio / fifo;
  const auto &w = r.welch(Arm::PrioLowFpr, kPneumo);
  v.require(reduction >= 0.35, fmt("reduction %.1f%% < 35%%", 100 * reduction));
  v.require(w && w->p < 1e-4, "Welch p not below 1e-4");
  v.require(r.exam_count >= 100000, "fewer than 1e5 exams");
  v.detail = fmt("%.1f -> %.1f min (-%.1f%%)", fifo, prio, 100 * reduction) +
             (w ? fmt(", p=%.3g", w->p) : std::string()) +
             fmt(", %.0f exams", double(r.exam_count)) +
             (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict foreign_object_stable(const ComparisonReport &r) {
  Verdict v;
  const double fifo = mean_of(r, Arm::Fifo, kForeign);
  std::string shifts;
  for (Arm a : {Arm::PrioLowFnr, Arm::PrioLowFpr, Arm::PrioMaxWaiting,
                Arm::Perfect}) {
    const double d = mean_of(r, a, kForeign) / fifo - 1.0;
    shifts += std::string(shifts.empty() ? "" : " ") +
              std::string(to_string(a)) + fmt(" %+.2f%%", 100 * d);
    v.require(std::abs(d) <= 0.03,
              std::string(to_string(a)) + fmt(" off by %+.2f%%", 100 * d));
  }
  v.detail = shifts + (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict normal_displacement(const ComparisonReport &r) {
  Verdict v;
  const double fifo = r.of(Arm::Fifo).summary.normal().mean;
  const double lowfpr = r.of(Arm::PrioLowFpr).summary.normal().mean;
  const double perfect = r.of(Arm::Perfect).summary.normal().mean;
  const double rise = lowfpr / fifo - 1.0;
  v.require(rise >= 0.25, fmt("lowFPR rise %.1f%% < 25%%", 100 * rise));
  for (Arm a : kAllArms)
    v.require(r.of(a).summary.normal().mean <= perfect,
              std::string(to_string(a)) + " exceeds Perfect");
  v.detail = fmt("FIFO %.1f, lowFPR %.1f (+%.1f%%)", fifo, lowfpr, 100 * rise) +
             fmt(", Perfect %.1f", perfect) + (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict sweep_optimum(const SweepResult &s) {
  Verdict v;
  const auto &pts = s.points;
  const auto best = std::min_element(
      pts.begin(), pts.end(),
      [](const SweepPoint &a, const SweepPoint &b) { return a.mean_rtat < b.mean_rtat; });
  const bool interior = best != pts.begin() && best + 1 != pts.end();
  v.require(interior, "minimum at a grid end");
  v.require(best->fpr >= 0.02 && best->fpr <= 0.15,
            fmt("minimum at FPR %.3g", best->fpr));
  const double lo = std::abs(pts.front().mean_rtat / s.fifo_mean_rtat - 1.0);
  const double hi = std::abs(pts.back().mean_rtat / s.fifo_mean_rtat - 1.0);
  v.require(lo <= 0.10, fmt("FPR->0 end %.1f%% from FIFO", 100 * lo));
  v.require(hi <= 0.10, fmt("FPR->1 end %.1f%% from FIFO", 100 * hi));
  std::string curve;
  for (const auto &p : pts)
    curve += fmt(" %g:%.1f", p.fpr, p.mean_rtat);
  v.detail = fmt("argmin FPR %g, FIFO %.1f |", best->fpr, s.fifo_mean_rtat) +
             curve + (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict urgency_monotone(const ComparisonReport &r) {
  Verdict v;
  // Arms that run the plain PRIO policy.
  for (Arm a : {Arm::PrioLowFnr, Arm::PrioLowFpr, Arm::Perfect}) {
    for (int c = 1; c < kFindingCount; ++c) {
      const double prev = mean_of(r, a, c - 1), cur = mean_of(r, a, c);
      if (cur < prev)
        v.require(false, std::string(to_string(a)) + ": " +
                             std::string(category_name(c)) +
                             fmt(" %.2f < ", cur) +
                             std::string(category_name(c - 1)) +
                             fmt(" %.2f", prev));
    }
    const double normal = r.of(a).summary.normal().mean;
    for (int c = 0; c < kFindingCount; ++c)
      if (mean_of(r, a, c) > normal)
        v.require(false, std::string(to_string(a)) + ": normal not largest");
  }
  if (v.pass)
    v.detail = "Prio-lowFNR, Prio-lowFPR and Perfect monotone";
  return v;
}

Verdict max_ordering(const ComparisonReport &r) {
  Verdict v;
  int capped = 0, above_fifo = 0;
  for (int c = 0; c < kFindingCount; ++c) {
    capped += max_of(r, Arm::PrioMaxWaiting, c) < max_of(r, Arm::PrioLowFpr, c);
    above_fifo += max_of(r, Arm::PrioLowFpr, c) > max_of(r, Arm::Fifo, c);
  }
  const double mw = mean_of(r, Arm::PrioMaxWaiting, kPneumo);
  const double lf = mean_of(r, Arm::PrioLowFpr, kPneumo);
  const double gap = std::abs(mw / lf - 1.0);
  v.require(capped >= 6, fmt("MAXwaiting < lowFPR max for %.0f/8", capped));
  v.require(above_fifo >= 6, fmt("lowFPR > FIFO max for %.0f/8", above_fifo));
  v.require(gap <= 0.15, fmt("pneumothorax gap %.1f%%", 100 * gap));
  v.detail = fmt("MAXwaiting<lowFPR %.0f/8, lowFPR>FIFO %.0f/8", capped,
                 above_fifo) +
             fmt(", pneumothorax gap %.1f%%", 100 * gap) +
             (v.pass ? "" : " | " + v.detail);
  return v;
}

Verdict perfect_bound(const ComparisonReport &r) {
  Verdict v;
  for (int c = 0; c < kFindingCount; ++c)
    for (Arm a : kAllArms)
      if (mean_of(r, a, c) < mean_of(r, Arm::Perfect, c))
        v.require(false, std::string(to_string(a)) + " beats Perfect on " +
                             std::string(category_name(c)));
  if (v.pass)
    v.detail = "Perfect lowest for all 8 findings";
  return v;
}

std::shared_ptr<TimeOfDayDistribution> constant(double delta) {
  return std::make_shared<TimeOfDayDistribution>(
      std::vector<DeltaHistogram>(24, DeltaHistogram({delta}, {1.0})),
      TimeOfDayDistribution::Source::File, 150.0);
}

Exam make_exam(std::uint64_t id, double t, FindingSet truth) {
  Exam e;
  e.id = id;
  e.created_at = t;
  e.true_findings = truth;
  return e;
}

Verdict hand_traces() {
  Verdict v;
  struct Case {
    Workload workload;
    double max_wait;
    Policy policy;
    std::vector<std::uint64_t> order;
    std::vector<double> rtat;
  };
  Workload three;
  three.exams = {make_exam(1, 0, {Finding::PleuralEffusion}),
                 make_exam(2, 1, {Finding::Pneumothorax}),
                 make_exam(3, 2, {Finding::Congestion})};
  Workload four;
  four.exams = {make_exam(0, 0, {}), make_exam(1, 1, {}),
                make_exam(2, 2, {Finding::Pneumothorax}),
                make_exam(3, 3, {Finding::Pneumothorax})};
  const std::vector<Case> cases = {
      {three, 960, Policy::Fifo, {1, 2, 3}, {10, 19, 28}},
      {three, 960, Policy::Prio, {1, 2, 3}, {10, 19, 28}},
      {three, 960, Policy::PrioMaxWait, {1, 2, 3}, {10, 19, 28}},
      {four, 15, Policy::Fifo, {0, 1, 2, 3}, {10, 19, 28, 37}},
      {four, 15, Policy::Prio, {0, 2, 3, 1}, {10, 39, 18, 27}},
      {four, 15, Policy::PrioMaxWait, {0, 2, 1, 3}, {10, 29, 18, 37}},
  };
  for (const auto &c : cases) {
    SimulationConfig cfg;
    cfg.days = 1;
    cfg.policy = c.policy;
    cfg.max_wait_min = c.max_wait;
    cfg.operating_point = OperatingPoint::perfect();
    cfg.arrivals = constant(30.0);
    cfg.reporting = constant(10.0);
    const auto r = simulate(cfg, c.workload);
    std::vector<double> rtat;
    std::vector<std::pair<double, std::uint64_t>> by_time;
    for (const auto &e : r.exams) {
      rtat.push_back(e.rtat());
      by_time.emplace_back(*e.reported_at, e.id);
    }
    std::sort(by_time.begin(), by_time.end());
    std::vector<std::uint64_t> order;
    for (auto &[t, id] : by_time)
      order.push_back(id);
    const std::string label = std::to_string(c.workload.exams.size()) +
                              "-exam " + std::string(to_string(c.policy));
    v.require(rtat == c.rtat, label + " RTATs differ");
    v.require(order == c.order, label + " pop order differs");
  }
  if (v.pass)
    v.detail = "3-exam and 4-exam traces exact under fifo, prio, prio-maxwait";
  return v;
}

Verdict determinism(const ComparisonReport &r, int days) {
  Verdict v;
  SimulationConfig cfg;
  cfg.days = std::min(days, 200);
  cfg.seed = kSeed;
  cfg.policy = Policy::PrioMaxWait;
  std::ostringstream a, b;
  write_trace(a, run_simulation(cfg));
  write_trace(b, run_simulation(cfg));
  v.require(a.str() == b.str(), "trace bytes differ between runs");
  for (const auto &arm : r.arms)
    v.require(arm.workload_hash == r.workload_hash,
              std::string(to_string(arm.arm)) + " saw another workload");
  if (v.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "identical traces; workload hash %016llx on all arms",
                  static_cast<unsigned long long>(r.workload_hash));
    v.detail = buf;
  }
  return v;
}

Verdict unit_numerics() {
  Verdict v;
  const auto roc = BinormalRoc::from_builtin_points();
  double worst_anchor = 0;
  for (Finding f : kAllFindings)
    for (const auto &a : roc.anchors[index_of(f)])
      worst_anchor = std::max(worst_anchor, std::abs(roc.of(f).tpr_at(a.fpr) - a.tpr));
  v.require(worst_anchor <= 1e-9, fmt("anchor error %.3g", worst_anchor));

  struct Ref {
    std::vector<double> a, b;
    double t, df, p;
  };
  const std::vector<Ref> refs = {
      {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}, -1.0, 8.0, 0.34659350708733416},
      {{12.5, 3.1, 7.7, 9.9, 15.2, 4.4, 8.8},
       {20.1, 18.3, 25.7, 22.2, 19.9},
       -6.055027695578742,
       9.991369759089112,
       0.00012322696594706272},
      {{1, 2, 3, 4, 5, 6, 7, 8, 9, 100},
       {2.5, 2.7, 2.9, 3.1},
       1.2269427708943286,
       9.003299119791128,
       0.2509602615621844},
  };
  double worst_welch = 0;
  for (const auto &ref : refs) {
    const auto w = welch_t_test(ref.a, ref.b);
    worst_welch = std::max({worst_welch, std::abs(w.t - ref.t),
                            std::abs(w.df - ref.df), std::abs(w.p - ref.p)});
  }
  v.require(worst_welch <= 1e-10, fmt("Welch error %.3g", worst_welch));

  constexpr int n = 100000;
  double worst_z = 0;
  RandomStream rng(kSeed, StreamId::Classifier);
  for (const auto &op : {OperatingPoint::low_fpr(), OperatingPoint::low_fnr()}) {
    for (Finding f : kAllFindings) {
      int hit = 0, alarm = 0;
      for (int i = 0; i < n; ++i) {
        hit += classify(FindingSet{f}, op, rng).contains(f);
        alarm += classify(FindingSet{}, op, rng).contains(f);
      }
      for (auto [count, p] : {std::pair{hit, op.of(f).tpr},
                              std::pair{alarm, op.of(f).fpr}}) {
        const double se = std::sqrt(p * (1 - p) / n);
        worst_z = std::max(worst_z, std::abs(count / double(n) - p) / se);
      }
    }
  }
  v.require(worst_z <= 3.0, fmt("confusion frequency off by %.2f SE", worst_z));
  v.detail = fmt("anchor err %.2g, Welch err %.2g, worst confusion z %.2f",
                 worst_anchor, worst_welch, worst_z) +
             (v.pass ? "" : " | " + v.detail);
  return v;
}

} // namespace

int main(int argc, char **argv) {
  int days = kDefaultDays;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--days") && i + 1 < argc)
      days = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--strict"))
      strict = true;
    else {
      std::fprintf(stderr, "usage: %s [--days N] [--strict]\n", argv[0]);
      return 2;
    }
  }

  SimulationConfig cfg;
  cfg.days = days;
  cfg.seed = kSeed;
  const auto report = run_comparison(cfg, kDefaultMaxWait, 0);

  SweepSpec spec;
  spec.fpr_grid.insert(spec.fpr_grid.begin(), 1e-6);
  spec.fpr_grid.push_back(1 - 1e-6);
  const auto sweep = run_sweep(spec, cfg, 0);

  const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria = {
      {"FIFO calibration", [&] { return fifo_calibration(report); }},
      {"pneumothorax reduction", [&] { return pneumothorax_reduction(report); }},
      {"foreign object unchanged", [&] { return foreign_object_stable(report); }},
      {"normal displacement", [&] { return normal_displacement(report); }},
      {"sweep optimum", [&] { return sweep_optimum(sweep); }},
      {"urgency monotonicity", [&] { return urgency_monotone(report); }},
      {"max RTAT ordering", [&] { return max_ordering(report); }},
      {"perfect bound", [&] { return perfect_bound(report); }},
      {"hand traces", [] { return hand_traces(); }},
      {"determinism", [&] { return determinism(report, days); }},
      {"unit numerics", [] { return unit_numerics(); }},
  };

  std::printf("acceptance run: %d days, seed %llu, %zu exams\n", days,
              static_cast<unsigned long long>(kSeed), report.exam_count);
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Verdict v = criteria[i].second();
    failed += !v.pass;
    std::printf("%s  %2zu  %-26s %s\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, v.detail.c_str());
  }
  std::printf("acceptance: %zu criteria evaluated, %zu passed, %d failed\n",
              criteria.size(), criteria.size() - failed, failed);
  return strict && failed ? 1 : 0;
}
