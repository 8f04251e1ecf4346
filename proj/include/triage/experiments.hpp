#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "triage/engine.hpp"
#include "triage/stats.hpp"

namespace triage {

/// The five worklist set-ups compared on one shared workload.
enum class Arm { Fifo, PrioLowFnr, PrioLowFpr, PrioMaxWaiting, Perfect };

inline constexpr int kArmCount = 5;
inline constexpr std::array<Arm, kArmCount> kAllArms = {
    Arm::Fifo, Arm::PrioLowFnr, Arm::PrioLowFpr, Arm::PrioMaxWaiting,
    Arm::Perfect};

std::string_view to_string(Arm arm);

/// Policy and operating point of an arm, applied on top of `base`.
SimulationConfig arm_config(const SimulationConfig &base, Arm arm,
                            double max_wait_min);

struct ArmResult {
  Arm arm = Arm::Fifo;
  RtatSummary summary;
  std::size_t escalations = 0;
  std::size_t drain_violations = 0;
  std::uint64_t workload_hash = 0;
};

struct ComparisonReport {
  std::array<ArmResult, kArmCount> arms{};
  /// Welch test of each arm against FIFO per category; empty when either
  /// sample is degenerate.
  std::array<std::array<std::optional<WelchResult>, kCategoryCount>, kArmCount>
      vs_fifo{};
  std::uint64_t workload_hash = 0;
  std::size_t exam_count = 0;

  const ArmResult &of(Arm arm) const {
    return arms[static_cast<std::size_t>(arm)];
  }
  const std::optional<WelchResult> &welch(Arm arm, int category) const {
    return vs_fifo[static_cast<std::size_t>(arm)]
                  [static_cast<std::size_t>(category)];
  }
};

/// Generates one workload from `cfg` and runs every arm over it.
ComparisonReport run_comparison(const SimulationConfig &cfg,
                                double max_wait_min = kDefaultMaxWait,
                                unsigned threads = 1);

/// Table with `mean / max` cells, one row per category, one column per arm.
void write_comparison_table(std::ostream &out, const ComparisonReport &report);
/// CSV `finding,arm,t,df,p` of every arm against FIFO.
void write_comparison_tests(std::ostream &out, const ComparisonReport &report);

struct SweepSpec {
  std::vector<double> fpr_grid = {0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.7, 0.9};
  int target_category = index_of(Finding::Pneumothorax);

  /// Throws ConfigError unless the grid is strictly increasing inside (0, 1).
  void validate() const;
};

struct SweepPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double mean_rtat = 0.0;
  std::size_t n = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Target-category mean under FIFO on the same workload.
  double fifo_mean_rtat = 0.0;
};

/// For each grid FPR, derives a shared operating point from the binormal
/// curves through the built-in points and runs PRIO on the workload of `cfg`.
SweepResult run_sweep(const SweepSpec &spec, const SimulationConfig &cfg,
                      unsigned threads = 1);

/// CSV `fpr,mean_rtat_min`.
void write_sweep_csv(std::ostream &out, const SweepResult &sweep);

} // namespace triage
