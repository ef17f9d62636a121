#pragma once

#include <stdexcept>
#include <string>

namespace ldt {

// Caller broke a precondition (dimension mismatch, bad parameters).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed instance or number text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds a configured size cap; refused rather than truncated.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that cannot fail unless the implementation is wrong.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ldt
