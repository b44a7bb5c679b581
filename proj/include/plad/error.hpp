#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace plad {

/// Base error. `type()` is a stable machine-readable tag; what() is for humans.
class Error : public std::runtime_error {
 public:
  Error(std::string type, const std::string& message)
      : std::runtime_error(message), type_(std::move(type)) {}

  const std::string& type() const noexcept { return type_; }

 private:
  std::string type_;
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error("schema", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io", m) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& m) : Error("invalid_argument", m) {}
};

struct VersionMismatch : Error {
  explicit VersionMismatch(const std::string& m) : Error("version_mismatch", m) {}
};

/// A judge response that did not parse; the caller may retry the request.
struct RetryableParseError : Error {
  explicit RetryableParseError(const std::string& m) : Error("retryable_parse", m) {}
};

struct ScoringFailed : Error {
  explicit ScoringFailed(const std::string& m) : Error("scoring_failed", m) {}
};

}  // namespace plad
