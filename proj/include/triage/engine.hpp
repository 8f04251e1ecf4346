#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

#include "triage/classifier.hpp"
#include "triage/distributions.hpp"
#include "triage/model.hpp"
#include "triage/worklist.hpp"

namespace triage {

enum class FlushMode {
  /// At every day boundary new arrivals are withheld until the worklist has
  /// drained to zero, then released in creation order.
  Force,
  /// No intervention; days in which the worklist never reached zero are
  /// counted as violations.
  Assert,
};

std::string_view to_string(FlushMode m);
FlushMode parse_flush_mode(std::string_view name);

struct SimulationConfig {
  int days = 1000;
  std::uint64_t seed = 20191105;
  Policy policy = Policy::Fifo;
  OperatingPoint operating_point = OperatingPoint::low_fpr();
  PrevalenceTable prevalence = PrevalenceTable::defaults();
  /// Null selects the shipped synthetic distributions.
  std::shared_ptr<const TimeOfDayDistribution> arrivals;
  std::shared_ptr<const TimeOfDayDistribution> reporting;
  double max_wait_min = kDefaultMaxWait;
  FlushMode flush = FlushMode::Force;

  /// Throws ConfigError.
  void validate() const;
  const TimeOfDayDistribution &arrival_distribution() const;
  const TimeOfDayDistribution &reporting_distribution() const;
};

/// Shipped synthetic distributions, built once.
const SyntheticDistributions &default_distributions();

/// Generated exams before any queueing: creation times and true findings.
/// Depends only on the seed, the arrival distribution and the prevalence
/// table, never on the policy.
struct Workload {
  std::vector<Exam> exams;

  /// FNV-1a over (id, created_at bits, true findings).
  std::uint64_t hash() const;
};

Workload generate_workload(const SimulationConfig &cfg);

struct SimulationResult {
  Policy policy = Policy::Fifo;
  OperatingPoint::Tag operating_point = OperatingPoint::Tag::Custom;
  int days = 0;
  int replications = 1;
  /// Every exam with reported_at set, sorted by id.
  std::vector<Exam> exams;
  std::size_t escalations = 0;
  /// Days in which the worklist never reached zero.
  std::size_t drain_violations = 0;
  std::uint64_t workload_hash = 0;

  std::size_t exam_count() const { return exams.size(); }
  /// RTATs of exams whose true findings place them in `category`, by id.
  std::vector<double> rtat_samples(int category) const;
};

/// Runs the event loop over a prepared workload. Predictions are drawn from
/// the classifier stream unless the policy is FIFO. If `audit` is set, one
/// CSV row per worklist event is written to it (no header).
SimulationResult simulate(const SimulationConfig &cfg, const Workload &workload,
                          std::ostream *audit = nullptr);

/// generate_workload followed by simulate.
SimulationResult run_simulation(const SimulationConfig &cfg,
                                std::ostream *audit = nullptr);

/// Seed of replication `index`; replication 0 keeps the master seed.
std::uint64_t replication_seed(std::uint64_t seed, int index);

/// Independent replications merged into one result. Exam ids of replication
/// i are offset by i << 40 so the merged collection stays sorted by id.
/// `threads` = 0 picks the hardware concurrency.
SimulationResult run_replications(const SimulationConfig &cfg, int replications,
                                  unsigned threads = 0);

/// Order-insensitive merge; samples end up sorted by exam id.
SimulationResult merge_results(std::vector<SimulationResult> parts);

inline constexpr const char *kAuditHeader = "time_min,event,exam_id,rank,escalated";

} // namespace triage
