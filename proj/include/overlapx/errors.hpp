#pragma once

#include <stdexcept>
#include <string>

namespace overlapx {

// An operation would materialize more state than its configured cap
// (family member limits, enumeration ground-size caps, node budgets).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition was violated (ground-size mismatch, arity
// mismatch, arguments out of range, non-maximal input where maximality
// is required).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Malformed text input in one of the file formats.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace overlapx
