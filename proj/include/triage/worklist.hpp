#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "triage/model.hpp"

namespace triage {

enum class Policy {
  /// Chronological order of creation.
  Fifo,
  /// Predicted urgency, stable within a rank.
  Prio,
  /// Prio plus escalation of exams waiting longer than max_wait.
  PrioMaxWait,
};

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);

inline constexpr double kDefaultMaxWait = 960.0;

/// Queue of unreported exams.
///
/// Entries are ordered by (effective rank, enqueue sequence). Under FIFO every
/// entry shares one rank, so the order is the enqueue order. Under the
/// priority policies the effective rank is the exam's urgency, and escalated
/// exams get rank 0 so they sit ahead of everything else while keeping their
/// mutual enqueue order.
class Worklist {
public:
  explicit Worklist(Policy policy, double max_wait_min = kDefaultMaxWait);

  Policy policy() const { return policy_; }
  double max_wait() const { return max_wait_; }
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }

  /// FIFO appends at the tail. PRIO places the exam behind every exam of
  /// equal or higher urgency and ahead of every less urgent one.
  /// Throws DuplicateExam if an exam with the same id is queued.
  void insert(Exam exam);

  /// Escalates every queued exam with now - created_at > max_wait and returns
  /// their ids in enqueue order. Only valid under PrioMaxWait.
  std::vector<std::uint64_t> escalate_overdue(double now);

  /// Removes and returns the head. Throws EmptyWorklist.
  Exam pop_next();

  const Exam &front() const;

  /// Ids in current pop order.
  std::vector<std::uint64_t> order() const;

private:
  struct Key {
    int rank;
    std::uint64_t seq;
    friend auto operator<=>(const Key &, const Key &) = default;
  };
  // (created_at, id, key) for exams still eligible for escalation.
  using WaitEntry = std::tuple<double, std::uint64_t, Key>;

  int effective_rank(const Exam &exam) const;

  Policy policy_;
  double max_wait_;
  std::uint64_t next_seq_ = 0;
  std::map<Key, Exam> queue_;
  std::set<WaitEntry> waiting_;
  std::unordered_set<std::uint64_t> ids_;
};

} // namespace triage
