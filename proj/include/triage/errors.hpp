#pragma once

#include <stdexcept>
#include <string>

namespace triage {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or arguments. The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Unusable input data. The CLI maps this to exit code 3.
class DataError : public Error {
public:
  using Error::Error;
};

class MissingFile : public DataError {
public:
  explicit MissingFile(const std::string &path)
      : DataError("missing file: " + path), path_(path) {}
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

class EmptyBin : public DataError {
public:
  explicit EmptyBin(int bin)
      : DataError("no deltas left in hour bin " + std::to_string(bin)),
        bin_(bin) {}
  int bin() const { return bin_; }

private:
  int bin_;
};

class NonpositiveDelta : public DataError {
public:
  using DataError::DataError;
};

class CalibrationFailed : public Error {
public:
  using Error::Error;
};

class DegenerateAnchors : public Error {
public:
  using Error::Error;
};

class DegenerateSamples : public Error {
public:
  using Error::Error;
};

class DuplicateExam : public Error {
public:
  using Error::Error;
};

class EmptyWorklist : public Error {
public:
  EmptyWorklist() : Error("pop from empty worklist") {}
};

} // namespace triage
