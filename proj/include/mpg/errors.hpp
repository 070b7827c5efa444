#pragma once

#include <stdexcept>
#include <string>

#include "mpg/rational.hpp"

namespace mpg {

// Malformed input documents: unknown references, duplicate ids, sinks.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates an operation's hypothesis.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Work refused or abandoned because a guard tripped.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// The layered search ran out of its node budget.  Carries the best value any
// retained node can still guarantee, which is a valid lower bound but not the
// exact answer.
struct NodeCapExceeded : ResourceError {
  NodeCapExceeded(const std::string& what, Rational bound, long expanded)
      : ResourceError(what), best_lower_bound(std::move(bound)), nodes_expanded(expanded) {}
  Rational best_lower_bound;
  long nodes_expanded;
};

// Invariants the code relies on internally; seeing one is a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mpg
