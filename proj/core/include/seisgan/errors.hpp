#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seisgan {

// Base class for all library errors. The CLI maps ConfigError to exit
// code 2 (usage/validation) and every other Error to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or volume dimensions do not line up. Messages name both shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// An argument value is outside its valid domain (stride < 1, cutoff >= Nyquist, ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

// API misuse: double backward, non-scalar loss, missing gradient, ...
class ContractError : public Error {
 public:
  using Error::Error;
};

// Data content violates an invariant (non-positive impedance, unknown class id, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A binary file violates its format. Carries the byte offset of the violation.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  explicit FormatError(const std::string& what) : Error(what), offset_(0) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Configuration / schema / CLI usage problems. Exit code 2 in the CLI.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A training run aborted (non-finite loss). Carries the step and component.
class TrainingError : public Error {
 public:
  TrainingError(const std::string& what, long long step, const std::string& component)
      : Error(what + " (step " + std::to_string(step) + ", " + component + ")"),
        step_(step),
        component_(component) {}
  long long step() const { return step_; }
  const std::string& component() const { return component_; }

 private:
  long long step_;
  std::string component_;
};

}  // namespace seisgan
