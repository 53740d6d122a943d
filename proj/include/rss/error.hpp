#pragma once

#include <stdexcept>
#include <string>

namespace rss {

// Failure classes; the CLI maps each to a distinct exit code.
enum class ErrorKind { input, numerical, degenerate };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Unreadable files, malformed records, bad parameters.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

// Singular or ill-conditioned systems.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

// Data that is valid but unusable: too short, constant, empty after filtering.
class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& what) : Error(ErrorKind::degenerate, what) {}
};

}  // namespace rss
