#pragma once

#include <stdexcept>
#include <string>

namespace logchart {

/// An operation was called on input that violates its documented precondition
/// (e.g. a non-Kummer map passed to ramification_index).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two values that must live in the same group do not.
class AmbientMismatch : public std::invalid_argument {
 public:
  explicit AmbientMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace logchart
