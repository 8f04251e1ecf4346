#include "triage/worklist.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "triage/errors.hpp"

namespace triage {

std::string_view to_string(Policy p) {
  switch (p) {
  case Policy::Fifo:
    return "fifo";
  case Policy::Prio:
    return "prio";
  case Policy::PrioMaxWait:
    return "prio-maxwait";
  }
  return "?";
}

Policy parse_policy(std::string_view name) {
  if (name == "fifo")
    return Policy::Fifo;
  if (name == "prio")
    return Policy::Prio;
  if (name == "prio-maxwait" || name == "prio_maxwait")
    return Policy::PrioMaxWait;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

Worklist::Worklist(Policy policy, double max_wait_min)
    : policy_(policy), max_wait_(max_wait_min) {
  if (policy_ == Policy::PrioMaxWait && !(max_wait_ > 0.0))
    throw ConfigError("max_wait_min must be positive");
}

int Worklist::effective_rank(const Exam &exam) const {
  if (policy_ == Policy::Fifo)
    return 0;
  return exam.escalated ? 0 : exam.urgency.value();
}

void Worklist::insert(Exam exam) {
  if (!ids_.insert(exam.id).second)
    throw DuplicateExam("exam " + std::to_string(exam.id) + " already queued");
  const Key key{effective_rank(exam), next_seq_++};
  if (policy_ == Policy::PrioMaxWait && !exam.escalated)
    waiting_.emplace(exam.created_at, exam.id, key);
  queue_.emplace(key, std::move(exam));
}

std::vector<std::uint64_t> Worklist::escalate_overdue(double now) {
  if (policy_ != Policy::PrioMaxWait)
    throw std::logic_error("escalation requires the prio-maxwait policy");

  std::vector<Key> overdue;
  auto it = waiting_.begin();
  for (; it != waiting_.end(); ++it) {
    if (!(now - std::get<0>(*it) > max_wait_))
      break;
    overdue.push_back(std::get<2>(*it));
  }
  waiting_.erase(waiting_.begin(), it);

  // Re-keying with the original sequence keeps escalated exams in enqueue
  // order among themselves.
  std::sort(overdue.begin(), overdue.end(),
            [](const Key &a, const Key &b) { return a.seq < b.seq; });
  std::vector<std::uint64_t> ids;
  ids.reserve(overdue.size());
  for (const Key &k : overdue) {
    auto node = queue_.extract(k);
    node.mapped().escalated = true;
    node.mapped().urgency = UrgencyRank(UrgencyRank::kMostUrgent);
    node.key() = Key{0, k.seq};
    ids.push_back(node.mapped().id);
    queue_.insert(std::move(node));
  }
  return ids;
}

Exam Worklist::pop_next() {
  if (queue_.empty())
    throw EmptyWorklist();
  auto node = queue_.extract(queue_.begin());
  Exam exam = std::move(node.mapped());
  if (policy_ == Policy::PrioMaxWait && !exam.escalated)
    waiting_.erase({exam.created_at, exam.id, node.key()});
  ids_.erase(exam.id);
  return exam;
}

const Exam &Worklist::front() const {
  if (queue_.empty())
    throw EmptyWorklist();
  return queue_.begin()->second;
}

std::vector<std::uint64_t> Worklist::order() const {
  std::vector<std::uint64_t> ids;
  ids.reserve(queue_.size());
  for (const auto &[key, exam] : queue_)
    ids.push_back(exam.id);
  return ids;
}

} // namespace triage
