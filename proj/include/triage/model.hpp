#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "triage/rng.hpp"

namespace triage {

/// The eight findings, declared in clinical urgency order (most urgent first).
enum class Finding : std::uint8_t {
  Pneumothorax,
  Congestion,
  PleuralEffusion,
  Infiltrate,
  Atelectasis,
  Cardiomegaly,
  Mass,
  ForeignObject,
};

inline constexpr int kFindingCount = 8;

inline constexpr std::array<Finding, kFindingCount> kAllFindings = {
    Finding::Pneumothorax, Finding::Congestion,   Finding::PleuralEffusion,
    Finding::Infiltrate,   Finding::Atelectasis,  Finding::Cardiomegaly,
    Finding::Mass,         Finding::ForeignObject};

constexpr int index_of(Finding f) { return static_cast<int>(f); }

/// Lowercase, underscore-separated name as used in every file format.
std::string_view to_string(Finding f);
std::optional<Finding> parse_finding(std::string_view name);

/// Set of findings stored as a bitmask.
class FindingSet {
public:
  constexpr FindingSet() = default;
  constexpr FindingSet(std::initializer_list<Finding> fs) {
    for (Finding f : fs)
      insert(f);
  }

  static constexpr FindingSet from_bits(std::uint8_t bits) {
    FindingSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr void insert(Finding f) { bits_ |= bit(f); }
  constexpr void erase(Finding f) { bits_ &= static_cast<std::uint8_t>(~bit(f)); }
  constexpr bool contains(Finding f) const { return (bits_ & bit(f)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint8_t bits() const { return bits_; }

  /// Most urgent member; nullopt for the empty set.
  constexpr std::optional<Finding> most_urgent() const {
    if (bits_ == 0)
      return std::nullopt;
    return static_cast<Finding>(std::countr_zero(bits_));
  }

  friend constexpr bool operator==(FindingSet, FindingSet) = default;

private:
  static constexpr std::uint8_t bit(Finding f) {
    return static_cast<std::uint8_t>(1u << index_of(f));
  }
  std::uint8_t bits_ = 0;
};

/// Pipe-separated finding names, empty string for the empty set.
std::string format_findings(FindingSet s);
FindingSet parse_findings(std::string_view text);

/// Urgency level of an exam. 1..8 are the findings in urgency order, 9 is
/// Normal. Lower is more urgent.
class UrgencyRank {
public:
  static constexpr int kMostUrgent = 1;
  static constexpr int kNormal = 9;

  constexpr explicit UrgencyRank(int value);
  static constexpr UrgencyRank of(Finding f) {
    return UrgencyRank(index_of(f) + 1);
  }
  static constexpr UrgencyRank normal() { return UrgencyRank(kNormal); }

  constexpr int value() const { return value_; }
  friend constexpr auto operator<=>(UrgencyRank, UrgencyRank) = default;

private:
  int value_;
};

constexpr UrgencyRank::UrgencyRank(int value) : value_(value) {
  if (value < kMostUrgent || value > kNormal)
    throw std::out_of_range("urgency rank out of [1, 9]");
}

/// Minimum rank among predicted findings; Normal for the empty set.
/// Combinations carry no extra weight.
constexpr UrgencyRank urgency_of(FindingSet predicted) {
  const auto top = predicted.most_urgent();
  return top ? UrgencyRank::of(*top) : UrgencyRank::normal();
}

/// Reporting category: one of the findings or Normal (empty true set).
/// Index 0..7 follow Finding, index 8 is Normal.
inline constexpr int kCategoryCount = kFindingCount + 1;
inline constexpr int kNormalCategory = kFindingCount;
std::string_view category_name(int category);
std::optional<int> parse_category(std::string_view name);

enum class LabelModel {
  /// Each finding drawn independently with its marginal prevalence.
  Independent,
  /// With probability p_normal the exam is normal; otherwise findings are
  /// drawn with p_f / (1 - p_normal), redrawing empty sets.
  NormalGated,
};

std::string_view to_string(LabelModel m);
LabelModel parse_label_model(std::string_view name);

struct PrevalenceTable {
  std::array<double, kFindingCount> finding{};
  double normal = 0.0;
  LabelModel mode = LabelModel::Independent;

  /// Hospital prevalence used by default.
  static PrevalenceTable defaults();

  double of(Finding f) const { return finding[index_of(f)]; }
  /// Throws ConfigError if any probability leaves [0, 1].
  void validate() const;
};

/// Reads a `finding,prevalence` CSV. Rows override the defaults; `normal` is
/// accepted as a row name for p_normal. A missing file yields the defaults.
PrevalenceTable load_prevalence(const std::filesystem::path &path);

FindingSet assign_findings(const PrevalenceTable &prev, RandomStream &rng);

/// One chest X-ray flowing through the worklist. Times are minutes since
/// simulation start.
struct Exam {
  std::uint64_t id = 0;
  double created_at = 0.0;
  FindingSet true_findings;
  FindingSet predicted_findings;
  UrgencyRank urgency = UrgencyRank::normal();
  bool escalated = false;
  std::optional<double> reported_at;

  /// Report turnaround time; requires reported_at.
  double rtat() const { return *reported_at - created_at; }
};

} // namespace triage
