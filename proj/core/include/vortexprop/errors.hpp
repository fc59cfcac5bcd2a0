#pragma once

#include <stdexcept>
#include <string>

namespace vortexprop {

// Error taxonomy mirrored by the CLI exit codes: config -> 2, numerical -> 3,
// resource -> 4.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, numerical, resource };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Kind::config, what) {}
};

// Cutoff-too-small, zero-norm inputs, amplitude floors and similar failures of
// the numerics rather than of the caller's request.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(Kind::numerical, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(Kind::resource, what) {}
};

}  // namespace vortexprop
