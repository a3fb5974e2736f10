#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

/// A precondition of an operation was violated by the caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A product or iterate left the range of double precision.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An operation that needs a bounded (or unbounded) operator got the other kind.
class BoundednessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shiftlab
