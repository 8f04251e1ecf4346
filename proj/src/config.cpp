#include "triage/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <map>
#include <set>

#include "csv.hpp"
#include "triage/errors.hpp"

namespace triage {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string &key, const std::string &text) {
  const auto t = detail::trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key + ": not a number '" + text + "'");
  return v;
}

long long to_int(const std::string &key, const std::string &text) {
  const auto t = detail::trim(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key + ": not an integer '" + text + "'");
  return v;
}

} // namespace

std::vector<double> parse_number_list(const std::string &text) {
  std::vector<double> out;
  for (const auto &part : detail::split(text, ','))
    if (!part.empty())
      out.push_back(to_double("list", part));
  return out;
}

RunConfig load_config(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path))
    throw MissingFile(path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(e.what());
  }

  const auto base = path.parent_path();
  auto resolve = [&base](const std::string &p) {
    std::filesystem::path fp(p);
    return fp.is_relative() ? base / fp : fp;
  };

  static const std::map<std::string, std::set<std::string>> known = {
      {"simulation",
       {"days", "seed", "replications", "label_model", "flush_mode",
        "prevalence_file", "trace_file", "summary_file", "audit_file"}},
      {"distributions", {"arrivals_file", "reporting_file", "outlier_cutoff_min"}},
      {"classifier", {"op", "fpr", "operating_point_file"}},
      {"worklist", {"policy", "max_wait_min"}},
      {"sweep", {"grid", "target"}},
  };

  RunConfig cfg;
  for (const auto &[section, entries] : tree) {
    auto sec = known.find(section);
    if (sec == known.end())
      throw ConfigError("unknown config section [" + section + "]");
    for (const auto &[key, node] : entries) {
      if (!sec->second.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      const std::string value = node.get_value<std::string>();
      const std::string name = section + "." + key;

      if (key == "days")
        cfg.days = static_cast<int>(to_int(name, value));
      else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(to_int(name, value));
      else if (key == "replications")
        cfg.replications = static_cast<int>(to_int(name, value));
      else if (key == "label_model")
        cfg.label_model = parse_label_model(value);
      else if (key == "flush_mode")
        cfg.flush = parse_flush_mode(value);
      else if (key == "prevalence_file")
        cfg.prevalence_file = resolve(value);
      else if (key == "trace_file")
        cfg.trace_file = resolve(value);
      else if (key == "summary_file")
        cfg.summary_file = resolve(value);
      else if (key == "audit_file")
        cfg.audit_file = resolve(value);
      else if (key == "arrivals_file")
        cfg.arrivals_file = resolve(value);
      else if (key == "reporting_file")
        cfg.reporting_file = resolve(value);
      else if (key == "outlier_cutoff_min")
        cfg.outlier_cutoff_min = to_double(name, value);
      else if (key == "op")
        cfg.op = value;
      else if (key == "fpr")
        cfg.fpr = to_double(name, value);
      else if (key == "operating_point_file")
        cfg.operating_point_file = resolve(value);
      else if (key == "policy")
        cfg.policy = parse_policy(value);
      else if (key == "max_wait_min")
        cfg.max_wait_min = to_double(name, value);
      else if (key == "grid")
        cfg.sweep.fpr_grid = parse_number_list(value);
      else if (key == "target") {
        auto c = parse_category(value);
        if (!c)
          throw ConfigError("sweep.target: unknown finding '" + value + "'");
        cfg.sweep.target_category = *c;
      }
    }
  }
  return cfg;
}

SimulationConfig RunConfig::to_simulation_config() const {
  if (days < 0)
    throw ConfigError("days must not be negative");
  if (replications < 1)
    throw ConfigError("replications must be at least 1");

  SimulationConfig sim;
  sim.days = days;
  sim.seed = seed;
  sim.policy = policy;
  sim.flush = flush;
  sim.max_wait_min = max_wait_min;

  sim.prevalence = prevalence_file.empty() ? PrevalenceTable::defaults()
                                           : load_prevalence(prevalence_file);
  sim.prevalence.mode = label_model;

  if (fpr) {
    if (!(*fpr >= 0.0 && *fpr <= 1.0))
      throw ConfigError("fpr must lie in [0, 1]");
    sim.operating_point =
        operating_point_at_fpr(BinormalRoc::from_builtin_points(), *fpr);
  } else if (!operating_point_file.empty()) {
    sim.operating_point = load_operating_point(operating_point_file);
  } else {
    sim.operating_point = builtin_operating_point(op);
  }

  if (!arrivals_file.empty())
    sim.arrivals = std::make_shared<TimeOfDayDistribution>(
        load_distribution(arrivals_file, outlier_cutoff_min).distribution);
  if (!reporting_file.empty())
    sim.reporting = std::make_shared<TimeOfDayDistribution>(
        load_distribution(reporting_file, outlier_cutoff_min).distribution);

  sim.validate();
  return sim;
}

} // namespace triage
