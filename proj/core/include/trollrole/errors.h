#pragma once

#include <stdexcept>
#include <string>

namespace trollrole {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or value (bad CSV, unknown label, bad vector file).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Hyperparameter or configuration outside its valid range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model fitting failed: degenerate data, missing class, non-finite values.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace trollrole
