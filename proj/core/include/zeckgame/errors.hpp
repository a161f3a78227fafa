#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zeck {

// Base for every error the library raises on bad input or rule violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A move that is not in legal_moves() of the state it was applied to.
class IllegalMove : public Error {
 public:
  using Error::Error;
};

// Raised by policies and the solver when asked to move from a terminal state.
class NoMovesAvailable : public Error {
 public:
  using Error::Error;
};

// Exhaustive work refused because a size exceeds its configured limit.
class CapacityExceeded : public Error {
 public:
  CapacityExceeded(const std::string& what, std::uint64_t requested,
                   std::uint64_t limit)
      : Error(what + " " + std::to_string(requested) + " exceeds limit " +
              std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

// Statistics that cannot be computed from the data (zero variance and the like).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

}  // namespace zeck
