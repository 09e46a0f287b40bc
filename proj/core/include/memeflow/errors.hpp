#pragma once

#include <stdexcept>
#include <string>

namespace memeflow {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain value failed an invariant (bad parameter, bad input record, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A series contains y <= 0 where the model requires positive amplitudes.
class NonPositiveData : public Error {
 public:
  using Error::Error;
};

// A constant series: the amplitude is unidentifiable.
class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

// Interaction matrix is numerically singular (condition estimate too large).
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// Integration left the admissible region (negative or non-finite state).
class StepUnstable : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input; carries the 1-based line number of the offending row.
class CsvError : public Error {
 public:
  CsvError(const std::string& message, long line)
      : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace memeflow
