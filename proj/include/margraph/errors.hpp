#pragma once

#include <stdexcept>
#include <string>

namespace margraph {

// Bad user-supplied data: unknown ids, malformed tables, non-SPD matrices.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold (e.g. a
// potential that was required to be normalized is not).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Enumeration would exceed the configured state-space limit.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace margraph
