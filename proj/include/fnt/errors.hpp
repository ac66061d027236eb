#pragma once

#include <stdexcept>
#include <string>

namespace fnt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad call arguments: wrong dimensions, non-positive m, unknown names, ...
struct ArgumentError : Error {
  using Error::Error;
};

// data that violates a structural invariant (not downward closed, inconsistent tube rows, ...)
struct ValidationError : Error {
  using Error::Error;
};

// rank embedding requested for a set that is not contained in the target
struct ContainmentError : Error {
  using Error::Error;
};

// zero pivot in an unpivoted factorization; reorder the nodes and retry
struct FactorizationError : Error {
  using Error::Error;
};

// unreadable or malformed files
struct IoError : Error {
  using Error::Error;
};

}  // namespace fnt
