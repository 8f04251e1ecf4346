#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "triage/rng.hpp"

namespace triage {

inline constexpr double kMinutesPerDay = 1440.0;
inline constexpr double kDefaultOutlierCutoff = 150.0;

/// Discrete histogram of positive deltas with sampling weights.
class DeltaHistogram {
public:
  DeltaHistogram() = default;
  /// values and weights must have equal length; weights positive.
  DeltaHistogram(std::vector<double> values, std::vector<double> weights);

  double sample(RandomStream &rng) const;
  double mean() const;
  bool empty() const { return values_.empty(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return weights_; }

private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Empirical distribution of inter-event deltas, binned by time of day.
/// Drives both exam creation and report completion.
class TimeOfDayDistribution {
public:
  enum class Source { File, Synthetic };

  /// bins.size() divides the day into equal slots; every bin must be
  /// non-empty and every delta in (0, cutoff].
  TimeOfDayDistribution(std::vector<DeltaHistogram> bins, Source source,
                        double outlier_cutoff_min);

  std::size_t bin_count() const { return bins_.size(); }
  std::size_t bin_index(double now) const;
  const DeltaHistogram &bin(std::size_t i) const { return bins_.at(i); }
  const DeltaHistogram &bin_at(double now) const { return bins_[bin_index(now)]; }
  Source source() const { return source_; }
  double outlier_cutoff() const { return cutoff_; }

  /// Expected number of events per day if deltas were drawn back to back,
  /// i.e. sum over bins of slot length / bin mean.
  double events_per_day() const;

private:
  std::vector<DeltaHistogram> bins_;
  Source source_;
  double cutoff_;
};

/// Draws a delta from the bin containing `now` (taken modulo one day).
double sample_delta(const TimeOfDayDistribution &dist, double now,
                    RandomStream &rng);

struct LoadedDistribution {
  TimeOfDayDistribution distribution;
  std::size_t discarded = 0;
};

/// Reads an `hour,delta_min` CSV into 24 hourly bins. Deltas above the cutoff
/// are dropped and counted. Non-positive deltas are rejected.
LoadedDistribution load_distribution(const std::filesystem::path &path,
                                     double cutoff_min = kDefaultOutlierCutoff);

/// Per-hour mean deltas used to synthesize a calibrated default workload in
/// the absence of recorded hospital data.
struct SyntheticProfile {
  std::array<double, 24> arrival_mean{};
  std::array<double, 24> reporting_mean{};
  /// Log-space standard deviation of each hour's log-normal.
  double dispersion = 0.6;
  /// Support points per discretized hour bin.
  int points_per_bin = 64;
  double outlier_cutoff_min = kDefaultOutlierCutoff;
  double target_daily_volume = 100.0;
  double target_fifo_mean_rtat = 80.0;

  /// Shipped profile, tuned so that FIFO reproduces the hospital aggregates.
  static SyntheticProfile defaults();
};

struct SyntheticDistributions {
  TimeOfDayDistribution arrivals;
  TimeOfDayDistribution reporting;
};

/// Builds hour-binned histograms by discretizing a truncated log-normal around
/// each hour's mean. Throws CalibrationFailed when the arrival profile misses
/// the daily volume by more than 5% or the reporting capacity cannot keep up
/// with the arrivals.
SyntheticDistributions synthesize_default(const SyntheticProfile &profile);

} // namespace triage
