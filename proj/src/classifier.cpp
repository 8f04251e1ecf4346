#include "triage/classifier.hpp"

#include <cmath>
#include <fstream>

#include "csv.hpp"
#include "triage/errors.hpp"
#include "triage/normal.hpp"

namespace triage {

namespace {

// Measured CNN operating points, in Finding order.
constexpr std::array<double, kFindingCount> kLowFprTpr = {
    0.82, 0.71, 0.86, 0.75, 0.61, 0.75, 0.51, 0.51};
constexpr std::array<double, kFindingCount> kLowFnrFpr = {
    0.20, 0.24, 0.21, 0.27, 0.39, 0.18, 0.72, 0.78};

} // namespace

OperatingPoint OperatingPoint::low_fpr() {
  OperatingPoint op;
  op.tag = Tag::LowFpr;
  for (int i = 0; i < kFindingCount; ++i)
    op.rates[i] = {kLowFprTpr[i], 0.05};
  return op;
}

OperatingPoint OperatingPoint::low_fnr() {
  OperatingPoint op;
  op.tag = Tag::LowFnr;
  for (int i = 0; i < kFindingCount; ++i)
    op.rates[i] = {0.95, kLowFnrFpr[i]};
  return op;
}

OperatingPoint OperatingPoint::perfect() {
  OperatingPoint op;
  op.tag = Tag::Perfect;
  op.rates.fill({1.0, 0.0});
  return op;
}

void OperatingPoint::validate() const {
  for (Finding f : kAllFindings) {
    const auto &r = of(f);
    if (!(r.tpr >= 0.0 && r.tpr <= 1.0 && r.fpr >= 0.0 && r.fpr <= 1.0))
      throw ConfigError("operating point for " + std::string(to_string(f)) +
                        " outside [0, 1]");
  }
}

std::string_view to_string(OperatingPoint::Tag tag) {
  switch (tag) {
  case OperatingPoint::Tag::LowFpr:
    return "low-fpr";
  case OperatingPoint::Tag::LowFnr:
    return "low-fnr";
  case OperatingPoint::Tag::Perfect:
    return "perfect";
  case OperatingPoint::Tag::Custom:
    break;
  }
  return "custom";
}

OperatingPoint builtin_operating_point(std::string_view name) {
  if (name == "low-fpr")
    return OperatingPoint::low_fpr();
  if (name == "low-fnr")
    return OperatingPoint::low_fnr();
  if (name == "perfect")
    return OperatingPoint::perfect();
  throw ConfigError("unknown operating point '" + std::string(name) + "'");
}

OperatingPoint load_operating_point(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw MissingFile(path.string());
  OperatingPoint op = OperatingPoint::low_fpr();
  op.tag = OperatingPoint::Tag::Custom;
  detail::CsvReader reader(in, path.string());
  reader.expect_header({"finding", "tpr", "fpr"});
  while (auto row = reader.next()) {
    auto f = parse_finding((*row)[0]);
    if (!f)
      throw DataError(reader.where() + ": unknown finding '" + (*row)[0] + "'");
    op.rates[index_of(*f)] = {reader.parse_double((*row)[1]),
                              reader.parse_double((*row)[2])};
  }
  try {
    op.validate();
  } catch (const ConfigError &e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return op;
}

FindingSet classify(FindingSet true_findings, const OperatingPoint &op,
                    RandomStream &rng) {
  FindingSet predicted;
  for (Finding f : kAllFindings) {
    const auto &r = op.of(f);
    const double p = true_findings.contains(f) ? r.tpr : r.fpr;
    if (rng.uniform() < p)
      predicted.insert(f);
  }
  return predicted;
}

double BinormalCurve::tpr_at(double fpr) const {
  if (fpr <= 0.0)
    return 0.0;
  if (fpr >= 1.0)
    return 1.0;
  return normal_cdf(intercept + slope * normal_quantile(fpr));
}

BinormalCurve fit_binormal(RocAnchor first, RocAnchor second) {
  auto inside = [](double v) { return v > 0.0 && v < 1.0; };
  if (!inside(first.fpr) || !inside(first.tpr) || !inside(second.fpr) ||
      !inside(second.tpr))
    throw DegenerateAnchors("ROC anchors must lie strictly inside (0,1)^2");
  if (first.fpr == second.fpr)
    throw DegenerateAnchors("ROC anchors share the same FPR");

  const double x1 = normal_quantile(first.fpr), y1 = normal_quantile(first.tpr);
  const double x2 = normal_quantile(second.fpr), y2 = normal_quantile(second.tpr);
  const double slope = (y2 - y1) / (x2 - x1);
  if (!(slope > 0.0))
    throw DegenerateAnchors("ROC anchors imply a non-increasing curve");
  return {y1 - slope * x1, slope};
}

BinormalRoc BinormalRoc::fit(const OperatingPoint &a, const OperatingPoint &b) {
  BinormalRoc roc;
  for (Finding f : kAllFindings) {
    const RocAnchor p{a.of(f).fpr, a.of(f).tpr};
    const RocAnchor q{b.of(f).fpr, b.of(f).tpr};
    roc.curves[index_of(f)] = fit_binormal(p, q);
    roc.anchors[index_of(f)] = {p, q};
  }
  return roc;
}

BinormalRoc BinormalRoc::from_builtin_points() {
  return fit(OperatingPoint::low_fpr(), OperatingPoint::low_fnr());
}

OperatingPoint operating_point_at_fpr(const BinormalRoc &roc, double fpr) {
  std::array<double, kFindingCount> all;
  all.fill(fpr);
  return operating_point_at_fpr(roc, all);
}

OperatingPoint
operating_point_at_fpr(const BinormalRoc &roc,
                       const std::array<double, kFindingCount> &fpr) {
  OperatingPoint op;
  op.tag = OperatingPoint::Tag::Custom;
  for (Finding f : kAllFindings) {
    const double x = fpr[index_of(f)];
    if (!(x >= 0.0 && x <= 1.0))
      throw ConfigError("FPR outside [0, 1]");
    op.rates[index_of(f)] = {roc.of(f).tpr_at(x), x};
  }
  return op;
}

} // namespace triage
