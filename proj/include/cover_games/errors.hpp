#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cover_games {

/// Malformed input, bad arguments, or an unmet structural precondition on
/// user-provided data. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap would be exceeded. Maps to CLI exit code 2.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition or post-condition failed on concrete data.
/// Carries the offending sample point when one exists. Maps to exit code 1.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what,
                         std::optional<std::size_t> point = std::nullopt)
      : std::runtime_error(what), point_(point) {}

  std::optional<std::size_t> point() const { return point_; }

 private:
  std::optional<std::size_t> point_;
};

}  // namespace cover_games
