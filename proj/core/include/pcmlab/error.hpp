#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pcmlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad matrix, bad vector, bad config).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to converge. Carries the last (or best) iterate.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::vector<double> last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

/// Configuration rejected at field level; `field()` names the offending key.
class ConfigError : public InputError {
 public:
  ConfigError(std::string field, const std::string& message)
      : InputError(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace pcmlab
