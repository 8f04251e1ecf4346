#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "triage/engine.hpp"

namespace triage {

inline constexpr const char *kTraceHeader =
    "exam_id,day,created_min,reported_min,rtat_min,true_findings,"
    "predicted_findings,urgency,escalated";

/// Per-exam trace with the header above. Finding lists are pipe-separated.
/// Numbers use fixed formatting so identical results give identical bytes.
void write_trace(std::ostream &out, const SimulationResult &result);

struct TraceRow {
  std::uint64_t exam_id = 0;
  double created_min = 0.0;
  double reported_min = 0.0;
  double rtat_min = 0.0;
  FindingSet true_findings;
  FindingSet predicted_findings;
  int urgency = UrgencyRank::kNormal;
  bool escalated = false;
};

/// Throws MissingFile or DataError.
std::vector<TraceRow> read_trace(const std::filesystem::path &path);

/// RTATs of the rows whose true findings fall in `category`.
std::vector<double> trace_samples(const std::vector<TraceRow> &rows,
                                  int category);

} // namespace triage
