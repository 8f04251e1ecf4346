#include "triage/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "triage/errors.hpp"

namespace triage {

double percentile_nearest_rank(std::span<const double> sorted, double q) {
  if (sorted.empty())
    return 0.0;
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

CategorySummary summarize_samples(std::vector<double> samples) {
  CategorySummary s;
  s.n = samples.size();
  s.samples = std::move(samples);
  if (s.n == 0)
    return s;
  s.mean = std::accumulate(s.samples.begin(), s.samples.end(), 0.0) /
           static_cast<double>(s.n);
  std::vector<double> sorted = s.samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.p95 = percentile_nearest_rank(sorted, 95.0);
  s.max = sorted.back();
  return s;
}

RtatSummary summarize(const SimulationResult &result) {
  std::array<std::vector<double>, kCategoryCount> buckets;
  double total = 0.0;
  for (const Exam &e : result.exams) {
    if (!e.reported_at)
      throw std::invalid_argument("summarize requires every exam reported");
    const double r = e.rtat();
    total += r;
    if (e.true_findings.empty()) {
      buckets[kNormalCategory].push_back(r);
      continue;
    }
    for (Finding f : kAllFindings)
      if (e.true_findings.contains(f))
        buckets[index_of(f)].push_back(r);
  }
  RtatSummary out;
  for (int c = 0; c < kCategoryCount; ++c)
    out.categories[c] = summarize_samples(std::move(buckets[c]));
  out.overall_n = result.exams.size();
  out.overall_mean =
      out.overall_n ? total / static_cast<double>(out.overall_n) : 0.0;
  return out;
}

void write_summary_csv(std::ostream &out, const RtatSummary &summary) {
  out << "finding,n,mean_rtat,median_rtat,p95_rtat,max_rtat\n";
  char buf[256];
  for (int c = 0; c < kCategoryCount; ++c) {
    const auto &s = summary.categories[c];
    std::snprintf(buf, sizeof buf, "%s,%zu,%.4f,%.4f,%.4f,%.4f\n",
                  std::string(category_name(c)).c_str(), s.n, s.mean, s.median,
                  s.p95, s.max);
    out << buf;
  }
}

namespace {

// Continued fraction for the incomplete beta, modified Lentz evaluation.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny)
    d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps)
      return h;
  }
  return h;
}

// I_x(a, b) with y = 1 - x supplied separately so callers can pass an exactly
// computed complement.
double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0)
    return 0.0;
  if (y <= 0.0)
    return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("incomplete beta needs positive parameters");
  if (x <= 0.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_two_sided(double t, double df) {
  if (std::isinf(t))
    return 0.0;
  // P(|T| > |t|) = I_{df / (df + t^2)}(df / 2, 1 / 2)
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return std::clamp(incomplete_beta(df / 2.0, 0.5, x, y), 0.0, 1.0);
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(std::span<const double> s) {
  Moments m;
  const auto n = static_cast<double>(s.size());
  m.mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
  double ss = 0.0, comp = 0.0;
  for (double v : s) {
    const double d = v - m.mean;
    ss += d * d;
    comp += d;
  }
  // Corrected two-pass sum of squares.
  m.var = (ss - comp * comp / n) / (n - 1.0);
  return m;
}

} // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw DegenerateSamples("Welch t-test needs at least two values per sample");
  const Moments ma = moments(a), mb = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double sa = ma.var / na, sb = mb.var / nb;
  if (sa + sb <= 0.0)
    throw DegenerateSamples("both samples have zero variance");

  WelchResult r;
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;
  r.var_a = ma.var;
  r.var_b = mb.var;
  r.t = (ma.mean - mb.mean) / std::sqrt(sa + sb);
  r.df = (sa + sb) * (sa + sb) /
         (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
  r.p = student_t_two_sided(r.t, r.df);
  return r;
}

} // namespace triage
