#include "triage/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "triage/errors.hpp"

namespace triage {

namespace {

constexpr std::array<std::string_view, kFindingCount> kFindingNames = {
    "pneumothorax", "congestion",   "pleural_effusion", "infiltrate",
    "atelectasis",  "cardiomegaly", "mass",             "foreign_object"};

} // namespace

std::string_view to_string(Finding f) { return kFindingNames[index_of(f)]; }

std::optional<Finding> parse_finding(std::string_view name) {
  for (Finding f : kAllFindings)
    if (kFindingNames[index_of(f)] == name)
      return f;
  return std::nullopt;
}

std::string format_findings(FindingSet s) {
  std::string out;
  for (Finding f : kAllFindings) {
    if (!s.contains(f))
      continue;
    if (!out.empty())
      out += '|';
    out += to_string(f);
  }
  return out;
}

FindingSet parse_findings(std::string_view text) {
  FindingSet s;
  if (text.empty())
    return s;
  for (auto part : detail::split(text, '|')) {
    auto f = parse_finding(part);
    if (!f)
      throw DataError("unknown finding '" + std::string(part) + "'");
    s.insert(*f);
  }
  return s;
}

std::string_view category_name(int category) {
  if (category == kNormalCategory)
    return "normal";
  return kFindingNames.at(static_cast<std::size_t>(category));
}

std::optional<int> parse_category(std::string_view name) {
  if (name == "normal")
    return kNormalCategory;
  if (auto f = parse_finding(name))
    return index_of(*f);
  return std::nullopt;
}

std::string_view to_string(LabelModel m) {
  return m == LabelModel::Independent ? "independent" : "normal-gated";
}

LabelModel parse_label_model(std::string_view name) {
  if (name == "independent")
    return LabelModel::Independent;
  if (name == "normal-gated" || name == "normal_gated")
    return LabelModel::NormalGated;
  throw ConfigError("unknown label model '" + std::string(name) + "'");
}

PrevalenceTable PrevalenceTable::defaults() {
  PrevalenceTable t;
  t.finding = {0.038, 0.207, 0.393, 0.167, 0.207, 0.195, 0.063, 0.497};
  t.normal = 0.31;
  t.mode = LabelModel::Independent;
  return t;
}

void PrevalenceTable::validate() const {
  auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (Finding f : kAllFindings)
    if (!ok(of(f)))
      throw ConfigError("prevalence of " + std::string(to_string(f)) +
                        " outside [0, 1]");
  if (!ok(normal))
    throw ConfigError("normal prevalence outside [0, 1]");
}

PrevalenceTable load_prevalence(const std::filesystem::path &path) {
  PrevalenceTable table = PrevalenceTable::defaults();
  std::ifstream in(path);
  if (!in)
    return table;

  detail::CsvReader reader(in, path.string());
  reader.expect_header({"finding", "prevalence"});
  while (auto row = reader.next()) {
    const auto &name = (*row)[0];
    const double p = reader.parse_double((*row)[1]);
    if (name == "normal") {
      table.normal = p;
    } else if (auto f = parse_finding(name)) {
      table.finding[index_of(*f)] = p;
    } else {
      throw DataError(reader.where() + ": unknown finding '" + name + "'");
    }
  }
  try {
    table.validate();
  } catch (const ConfigError &e) {
    throw DataError(reader.where() + ": " + e.what());
  }
  return table;
}

FindingSet assign_findings(const PrevalenceTable &prev, RandomStream &rng) {
  FindingSet s;
  if (prev.mode == LabelModel::Independent) {
    for (Finding f : kAllFindings)
      if (rng.bernoulli(prev.of(f)))
        s.insert(f);
    return s;
  }

  if (rng.bernoulli(prev.normal))
    return s;
  std::array<double, kFindingCount> q{};
  bool any = false;
  for (Finding f : kAllFindings) {
    q[index_of(f)] = std::min(1.0, prev.of(f) / (1.0 - prev.normal));
    any = any || q[index_of(f)] > 0.0;
  }
  // With every q_f at zero no non-empty set exists.
  if (!any)
    return s;
  do {
    s = FindingSet{};
    for (Finding f : kAllFindings)
      if (rng.bernoulli(q[index_of(f)]))
        s.insert(f);
  } while (s.empty());
  return s;
}

} // namespace triage
