#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace childplay {

/// Invalid session, series or game configuration. `key()` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// The caller misused the session API (out-of-turn move, move on a finished game).
/// Distinct from a wrong move, which is a scored game event.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Precondition of a pure function was violated.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The remote model could not be reached. Never scored as a wrong move.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PlacementInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace childplay
