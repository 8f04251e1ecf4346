#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "triage/model.hpp"
#include "triage/rng.hpp"

namespace triage {

struct ConfusionRates {
  double tpr = 0.0;
  double fpr = 0.0;

  double fnr() const { return 1.0 - tpr; }
  double tnr() const { return 1.0 - fpr; }
};

/// Per-finding (TPR, FPR) pair defining the stochastic stand-in classifier.
struct OperatingPoint {
  enum class Tag { LowFpr, LowFnr, Perfect, Custom };

  std::array<ConfusionRates, kFindingCount> rates{};
  Tag tag = Tag::Custom;

  const ConfusionRates &of(Finding f) const { return rates[index_of(f)]; }

  /// Operating point tuned for the best mean turnaround (every FPR 0.05).
  static OperatingPoint low_fpr();
  /// Operating point with every FNR at 0.05.
  static OperatingPoint low_fnr();
  static OperatingPoint perfect();

  /// Throws ConfigError if any rate leaves [0, 1].
  void validate() const;
};

std::string_view to_string(OperatingPoint::Tag tag);
/// Accepts `low-fpr`, `low-fnr`, `perfect`.
OperatingPoint builtin_operating_point(std::string_view name);

/// Reads a `finding,tpr,fpr` CSV. Findings not listed keep the low-FPR
/// values. Throws MissingFile.
OperatingPoint load_operating_point(const std::filesystem::path &path);

/// Each true finding is kept with probability tpr, each absent finding is
/// added with probability fpr; independent across findings. Always consumes
/// exactly one uniform per finding.
FindingSet classify(FindingSet true_findings, const OperatingPoint &op,
                    RandomStream &rng);

/// Probit-space line TPR = Phi(intercept + slope * Phi^-1(FPR)).
struct BinormalCurve {
  double intercept = 0.0;
  double slope = 1.0;

  double tpr_at(double fpr) const;
};

struct RocAnchor {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Solves the two probit-space equations through both anchors exactly.
/// Throws DegenerateAnchors for equal FPRs, anchors outside (0,1)^2, or a
/// non-positive slope.
BinormalCurve fit_binormal(RocAnchor first, RocAnchor second);

/// One curve per finding.
struct BinormalRoc {
  std::array<BinormalCurve, kFindingCount> curves{};
  std::array<std::array<RocAnchor, 2>, kFindingCount> anchors{};

  const BinormalCurve &of(Finding f) const { return curves[index_of(f)]; }

  /// Curves through the low-FPR and low-FNR operating points.
  static BinormalRoc from_builtin_points();
  static BinormalRoc fit(const OperatingPoint &a, const OperatingPoint &b);
};

/// Evaluates every finding's curve at a shared FPR. fpr = 0 gives tpr = 0 and
/// fpr = 1 gives tpr = 1.
OperatingPoint operating_point_at_fpr(const BinormalRoc &roc, double fpr);
OperatingPoint operating_point_at_fpr(const BinormalRoc &roc,
                                      const std::array<double, kFindingCount> &fpr);

} // namespace triage
