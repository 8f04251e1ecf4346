#include "triage/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <deque>
#include <future>
#include <limits>
#include <ostream>
#include <thread>

#include "triage/errors.hpp"

namespace triage {

std::string_view to_string(FlushMode m) {
  return m == FlushMode::Force ? "force" : "assert";
}

FlushMode parse_flush_mode(std::string_view name) {
  if (name == "force")
    return FlushMode::Force;
  if (name == "assert")
    return FlushMode::Assert;
  throw ConfigError("unknown flush mode '" + std::string(name) + "'");
}

void SimulationConfig::validate() const {
  if (days < 0)
    throw ConfigError("days must not be negative");
  if (policy == Policy::PrioMaxWait && !(max_wait_min > 0.0))
    throw ConfigError("max_wait_min must be positive");
  prevalence.validate();
  operating_point.validate();
}

const SyntheticDistributions &default_distributions() {
  static const SyntheticDistributions dists =
      synthesize_default(SyntheticProfile::defaults());
  return dists;
}

const TimeOfDayDistribution &SimulationConfig::arrival_distribution() const {
  return arrivals ? *arrivals : default_distributions().arrivals;
}

const TimeOfDayDistribution &SimulationConfig::reporting_distribution() const {
  return reporting ? *reporting : default_distributions().reporting;
}

std::uint64_t Workload::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  for (const Exam &e : exams) {
    mix(e.id);
    mix(std::bit_cast<std::uint64_t>(e.created_at));
    mix(e.true_findings.bits());
  }
  return h;
}

Workload generate_workload(const SimulationConfig &cfg) {
  cfg.validate();
  const auto &dist = cfg.arrival_distribution();
  RandomStream arrivals(cfg.seed, StreamId::Arrivals);
  RandomStream labels(cfg.seed, StreamId::Labels);
  const double horizon = cfg.days * kMinutesPerDay;

  Workload w;
  w.exams.reserve(static_cast<std::size_t>(cfg.days) * 110);
  double t = 0.0;
  while (true) {
    const double delta = sample_delta(dist, t, arrivals);
    if (!(delta > 0.0))
      throw NonpositiveDelta("arrival delta must be positive");
    t += delta;
    if (t >= horizon)
      break;
    Exam e;
    e.id = w.exams.size();
    e.created_at = t;
    e.true_findings = assign_findings(cfg.prevalence, labels);
    w.exams.push_back(e);
  }
  return w;
}

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

class Simulator {
public:
  Simulator(const SimulationConfig &cfg, std::ostream *audit)
      : cfg_(cfg), reporting_dist_(cfg.reporting_distribution()),
        worklist_(cfg.policy, cfg.max_wait_min),
        reporting_(cfg.seed, StreamId::Reporting), audit_(audit) {}

  SimulationResult run(std::vector<Exam> exams) {
    result_.policy = cfg_.policy;
    result_.operating_point = cfg_.operating_point.tag;
    result_.days = cfg_.days;
    result_.exams.reserve(exams.size());

    // Day 0 starts with an empty worklist.
    zero_days_.assign(static_cast<std::size_t>(std::max(cfg_.days, 0)), false);
    mark_zero(0.0);

    std::size_t next = 0;
    int next_boundary = 1;
    // Boundaries only matter while arrivals are still to come.
    const double last_arrival = exams.empty() ? 0.0 : exams.back().created_at;

    while (true) {
      const double t_arrival =
          next < exams.size() ? exams[next].created_at : kNever;
      const double t_done = busy_ ? free_at_ : kNever;
      const double t_boundary =
          next_boundary * kMinutesPerDay <= last_arrival
              ? next_boundary * kMinutesPerDay
              : kNever;

      // Ties resolve as completion, then boundary, then arrival.
      if (t_done == kNever && t_boundary == kNever && t_arrival == kNever)
        break;
      if (t_done <= t_boundary && t_done <= t_arrival) {
        now_ = t_done;
        busy_ = false;
      } else if (t_boundary <= t_arrival) {
        now_ = t_boundary;
        on_boundary();
        ++next_boundary;
      } else {
        now_ = t_arrival;
        on_arrival(std::move(exams[next++]));
      }

      const double t_next = std::min(
          {next < exams.size() ? exams[next].created_at : kNever,
           next_boundary * kMinutesPerDay <= last_arrival
               ? next_boundary * kMinutesPerDay
               : kNever});
      if (!busy_ && !worklist_.empty() && t_next > now_)
        dispatch();
    }

    if (!held_.empty() || !worklist_.empty())
      throw std::logic_error("simulation ended with unreported exams");

    for (bool z : zero_days_)
      if (!z)
        ++result_.drain_violations;
    std::sort(result_.exams.begin(), result_.exams.end(),
              [](const Exam &a, const Exam &b) { return a.id < b.id; });
    return std::move(result_);
  }

private:
  void on_arrival(Exam exam) {
    if (holding_) {
      held_.push_back(std::move(exam));
      return;
    }
    admit(std::move(exam));
  }

  void admit(Exam exam) {
    log("insert", exam);
    worklist_.insert(std::move(exam));
    escalate();
  }

  void on_boundary() {
    if (worklist_.empty()) {
      mark_zero(now_);
      return;
    }
    if (cfg_.flush == FlushMode::Force)
      holding_ = true;
  }

  void dispatch() {
    escalate();
    Exam exam = worklist_.pop_next();
    log("pop", exam);
    const double delta = sample_delta(reporting_dist_, now_, reporting_);
    if (!(delta > 0.0))
      throw NonpositiveDelta("reporting delta must be positive");
    exam.reported_at = now_ + delta;
    free_at_ = *exam.reported_at;
    busy_ = true;
    result_.exams.push_back(std::move(exam));

    if (worklist_.empty()) {
      mark_zero(now_);
      if (holding_) {
        holding_ = false;
        std::deque<Exam> released;
        released.swap(held_);
        for (auto &e : released)
          admit(std::move(e));
      }
    }
  }

  void escalate() {
    if (cfg_.policy != Policy::PrioMaxWait)
      return;
    const auto ids = worklist_.escalate_overdue(now_);
    result_.escalations += ids.size();
    if (audit_)
      for (auto id : ids)
        write_audit("escalate", id, 0, true);
  }

  void mark_zero(double t) {
    const auto day = static_cast<std::size_t>(t / kMinutesPerDay);
    if (day < zero_days_.size())
      zero_days_[day] = true;
  }

  void log(const char *event, const Exam &e) {
    if (audit_)
      write_audit(event, e.id, e.escalated ? 0 : e.urgency.value(), e.escalated);
  }

  void write_audit(const char *event, std::uint64_t id, int rank,
                   bool escalated) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.6f,%s,%llu,%d,%d\n", now_, event,
                  static_cast<unsigned long long>(id), rank, escalated ? 1 : 0);
    *audit_ << buf;
  }

  const SimulationConfig &cfg_;
  const TimeOfDayDistribution &reporting_dist_;
  Worklist worklist_;
  RandomStream reporting_;
  std::ostream *audit_;

  SimulationResult result_;
  std::deque<Exam> held_;
  std::vector<bool> zero_days_;
  double now_ = 0.0;
  double free_at_ = 0.0;
  bool busy_ = false;
  bool holding_ = false;
};

} // namespace

SimulationResult simulate(const SimulationConfig &cfg, const Workload &workload,
                          std::ostream *audit) {
  cfg.validate();
  std::vector<Exam> exams = workload.exams;
  if (cfg.policy != Policy::Fifo) {
    RandomStream classifier(cfg.seed, StreamId::Classifier);
    for (Exam &e : exams) {
      e.predicted_findings = classify(e.true_findings, cfg.operating_point,
                                      classifier);
      e.urgency = urgency_of(e.predicted_findings);
    }
  }
  Simulator sim(cfg, audit);
  auto result = sim.run(std::move(exams));
  result.workload_hash = workload.hash();
  return result;
}

SimulationResult run_simulation(const SimulationConfig &cfg,
                                std::ostream *audit) {
  return simulate(cfg, generate_workload(cfg), audit);
}

std::vector<double> SimulationResult::rtat_samples(int category) const {
  std::vector<double> out;
  for (const Exam &e : exams) {
    const bool in = category == kNormalCategory
                        ? e.true_findings.empty()
                        : e.true_findings.contains(static_cast<Finding>(category));
    if (in)
      out.push_back(e.rtat());
  }
  return out;
}

std::uint64_t replication_seed(std::uint64_t seed, int index) {
  return seed + static_cast<std::uint64_t>(index) * 0x9E3779B97F4A7C15ULL;
}

SimulationResult merge_results(std::vector<SimulationResult> parts) {
  SimulationResult out;
  if (parts.empty())
    return out;
  out.policy = parts.front().policy;
  out.operating_point = parts.front().operating_point;
  out.replications = 0;
  std::uint64_t hash = 0;
  for (auto &p : parts) {
    out.days += p.days;
    out.replications += p.replications;
    out.escalations += p.escalations;
    out.drain_violations += p.drain_violations;
    // Commutative so the merge order cannot change it.
    hash += p.workload_hash;
    out.exams.insert(out.exams.end(), std::make_move_iterator(p.exams.begin()),
                     std::make_move_iterator(p.exams.end()));
  }
  out.workload_hash = parts.size() == 1 ? parts.front().workload_hash : hash;
  std::sort(out.exams.begin(), out.exams.end(),
            [](const Exam &a, const Exam &b) { return a.id < b.id; });
  return out;
}

SimulationResult run_replications(const SimulationConfig &cfg, int replications,
                                  unsigned threads) {
  if (replications < 1)
    throw ConfigError("replications must be at least 1");
  cfg.validate();
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  // Build the shared default before workers race to it.
  (void)cfg.arrival_distribution();

  auto one = [&cfg](int index) {
    SimulationConfig c = cfg;
    c.seed = replication_seed(cfg.seed, index);
    Workload w = generate_workload(c);
    const std::uint64_t offset = static_cast<std::uint64_t>(index) << 40;
    for (Exam &e : w.exams)
      e.id += offset;
    return simulate(c, w);
  };

  std::vector<SimulationResult> parts(static_cast<std::size_t>(replications));
  for (int start = 0; start < replications; start += static_cast<int>(threads)) {
    const int stop = std::min(replications, start + static_cast<int>(threads));
    std::vector<std::future<SimulationResult>> jobs;
    for (int i = start; i < stop; ++i)
      jobs.push_back(std::async(threads == 1 ? std::launch::deferred
                                             : std::launch::async,
                                one, i));
    for (int i = start; i < stop; ++i)
      parts[static_cast<std::size_t>(i)] = jobs[static_cast<std::size_t>(i - start)].get();
  }
  return merge_results(std::move(parts));
}

} // namespace triage
