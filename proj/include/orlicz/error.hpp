#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical input failed (p <= 1, negative level, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input that is valid in form but unusable (flat density runs, empty support).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Malformed spec string or experiment configuration; `field` names the culprit.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace orlicz
