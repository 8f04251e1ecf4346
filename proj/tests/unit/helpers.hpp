#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "triage/distributions.hpp"
#include "triage/engine.hpp"

namespace testutil {

/// Scratch directory removed at scope exit.
class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("triage-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::filesystem::path write(const std::string &name,
                              const std::string &text) const {
    auto p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }
  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// Every hour bin holds the single value `delta`.
inline std::shared_ptr<triage::TimeOfDayDistribution>
constant_distribution(double delta) {
  std::vector<triage::DeltaHistogram> bins(
      24, triage::DeltaHistogram({delta}, {1.0}));
  return std::make_shared<triage::TimeOfDayDistribution>(
      std::move(bins), triage::TimeOfDayDistribution::Source::File, 150.0);
}

inline triage::Exam exam(std::uint64_t id, double created,
                         triage::FindingSet truth = {}) {
  triage::Exam e;
  e.id = id;
  e.created_at = created;
  e.true_findings = truth;
  return e;
}

/// Exam with a given predicted urgency for direct worklist tests.
inline triage::Exam ranked(std::uint64_t id, int rank, double created = 0.0) {
  triage::Exam e = exam(id, created);
  e.urgency = triage::UrgencyRank(rank);
  return e;
}

} // namespace testutil
