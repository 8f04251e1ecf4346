#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "triage/engine.hpp"
#include "triage/model.hpp"

namespace triage {

struct CategorySummary {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
  double max = 0.0;
  /// Samples in exam-id order.
  std::vector<double> samples;
};

/// Per-category RTAT statistics. Categories are the eight findings followed
/// by Normal; an exam counts once in every category of its true findings.
struct RtatSummary {
  std::array<CategorySummary, kCategoryCount> categories{};

  const CategorySummary &of(Finding f) const { return categories[index_of(f)]; }
  const CategorySummary &normal() const { return categories[kNormalCategory]; }
  /// Mean over all exams, each counted once.
  double overall_mean = 0.0;
  std::size_t overall_n = 0;
};

CategorySummary summarize_samples(std::vector<double> samples);
RtatSummary summarize(const SimulationResult &result);

/// Nearest-rank percentile, q in (0, 100]. Empty input gives 0.
double percentile_nearest_rank(std::span<const double> sorted, double q);

/// Summary CSV: `finding,n,mean_rtat,median_rtat,p95_rtat,max_rtat`.
void write_summary_csv(std::ostream &out, const RtatSummary &summary);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double mean_a = 0.0, mean_b = 0.0;
  double var_a = 0.0, var_b = 0.0;
};

/// Unequal-variance two-sample t-test, two-sided. Throws DegenerateSamples
/// when either sample has fewer than two values or both variances are zero.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| > |t|) of Student's t with df degrees.
double student_t_two_sided(double t, double df);

} // namespace triage
