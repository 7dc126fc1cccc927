#pragma once

#include <stdexcept>
#include <string>

namespace nmqed {

// Status codes shared by the C API and the CLI exit codes.
enum class Status : int {
  Ok = 0,
  ConfigError = 2,
  NumericsError = 3,
  DegenerateError = 4,
};

class Error : public std::runtime_error {
public:
  Error(Status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

private:
  Status status_;
};

// Bad keys, unparsable values, violated parameter constraints.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(Status::ConfigError, what) {}
};

// Numerical diagnostics: trace drift, unmet decay-tail criterion,
// singular steady-state systems, integrator breakdown.
class NumericsError : public Error {
public:
  explicit NumericsError(const std::string& what) : Error(Status::NumericsError, what) {}
};

// Parameter degeneracies where closed forms contain 0/0 (e.g. |G| -> 0).
class DegenerateError : public Error {
public:
  explicit DegenerateError(const std::string& what) : Error(Status::DegenerateError, what) {}
};

}  // namespace nmqed
