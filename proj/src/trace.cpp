#include "triage/trace.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "csv.hpp"
#include "triage/errors.hpp"

namespace triage {

void write_trace(std::ostream &out, const SimulationResult &result) {
  out << kTraceHeader << '\n';
  char buf[160];
  for (const Exam &e : result.exams) {
    const double reported = e.reported_at.value_or(e.created_at);
    const auto day = static_cast<long long>(e.created_at / kMinutesPerDay);
    std::snprintf(buf, sizeof buf, "%llu,%lld,%.6f,%.6f,%.6f,",
                  static_cast<unsigned long long>(e.id), day, e.created_at,
                  reported, reported - e.created_at);
    out << buf << format_findings(e.true_findings) << ','
        << format_findings(e.predicted_findings) << ',' << e.urgency.value()
        << ',' << (e.escalated ? 1 : 0) << '\n';
  }
}

std::vector<TraceRow> read_trace(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw MissingFile(path.string());
  detail::CsvReader reader(in, path.string());
  reader.expect_header({"exam_id", "day", "created_min", "reported_min",
                        "rtat_min", "true_findings", "predicted_findings",
                        "urgency", "escalated"});
  std::vector<TraceRow> rows;
  while (auto fields = reader.next()) {
    const auto &f = *fields;
    TraceRow r;
    r.exam_id = static_cast<std::uint64_t>(reader.parse_int(f[0]));
    r.created_min = reader.parse_double(f[2]);
    r.reported_min = reader.parse_double(f[3]);
    r.rtat_min = reader.parse_double(f[4]);
    r.true_findings = parse_findings(f[5]);
    r.predicted_findings = parse_findings(f[6]);
    r.urgency = static_cast<int>(reader.parse_int(f[7]));
    r.escalated = reader.parse_int(f[8]) != 0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> trace_samples(const std::vector<TraceRow> &rows,
                                  int category) {
  std::vector<double> out;
  for (const auto &r : rows) {
    const bool in = category == kNormalCategory
                        ? r.true_findings.empty()
                        : r.true_findings.contains(static_cast<Finding>(category));
    if (in)
      out.push_back(r.rtat_min);
  }
  return out;
}

} // namespace triage
