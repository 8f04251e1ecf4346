#pragma once

// Minimal reader for the plain comma-separated files this project consumes.
// No quoting: none of the formats contain commas inside fields.

#include <charconv>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triage/errors.hpp"

namespace triage::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

class CsvReader {
public:
  CsvReader(std::istream &in, std::string source)
      : in_(in), source_(std::move(source)) {}

  /// Reads the first line and checks that it starts with the given columns.
  /// Returns the full header.
  std::vector<std::string> expect_header(std::vector<std::string> columns) {
    std::string line;
    if (!std::getline(in_, line))
      throw DataError(source_ + ": empty file");
    ++line_no_;
    header_ = split(line, ',');
    if (header_.size() < columns.size())
      throw DataError(source_ + ": bad header '" + line + "'");
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (header_[i] != columns[i])
        throw DataError(source_ + ": expected column '" + columns[i] +
                        "', found '" + header_[i] + "'");
    return header_;
  }

  /// Next non-blank row, with exactly as many fields as the header.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (trim(line).empty())
        continue;
      auto fields = split(line, ',');
      if (fields.size() != header_.size())
        throw DataError(where() + ": expected " +
                        std::to_string(header_.size()) + " fields");
      return fields;
    }
    return std::nullopt;
  }

  double parse_double(std::string_view text) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw DataError(where() + ": not a number '" + std::string(text) + "'");
    return v;
  }

  long long parse_int(std::string_view text) const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw DataError(where() + ": not an integer '" + std::string(text) + "'");
    return v;
  }

  std::string where() const {
    return source_ + ":" + std::to_string(line_no_);
  }

  const std::vector<std::string> &header() const { return header_; }

private:
  std::istream &in_;
  std::string source_;
  std::vector<std::string> header_;
  int line_no_ = 0;
};

} // namespace triage::detail
