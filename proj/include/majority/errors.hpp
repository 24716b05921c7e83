#pragma once

#include <stdexcept>
#include <string>

namespace majority {

// Raised for malformed instances and violated operation preconditions.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A query that the current state cannot accept (intra-component, or not an edge of the graph).
class IllegalQuery : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Graph does not admit a solution of the majority problem at all.
class Unsolvable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An adversary strategy could not keep its own invariant. Never expected to fire.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace majority
