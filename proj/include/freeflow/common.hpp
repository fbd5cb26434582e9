#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace freeflow {

using Cap = std::int64_t;
using NodeId = int;
using ArcId = int;

/// Integer arc function indexed by arc id.
using ArcFlow = std::vector<Cap>;

/// Rejected input: malformed file, invalid network, infeasible flow.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A checked invariant of an algorithm failed. Signals a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested operation is outside the implemented cases.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InternalError(what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw InvalidInput(what);
}

}  // namespace freeflow
