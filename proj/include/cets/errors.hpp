#pragma once

#include <stdexcept>
#include <string>

namespace cets {

/// Input exceeds a hard size cap (oracle enumeration, statevector width,
/// block size, lattice size).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model does not fit the requested plan family (wrong shape for the
/// closed-form builders, terms spanning non-adjacent blocks, ...).
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal cross-check failed: gamma recursion inconsistent with the
/// amplitude tables, a gate applied to a non-fresh qubit, and similar.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (JSON syntax, schema, or value constraints).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cets
