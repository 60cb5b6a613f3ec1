#pragma once

#include <stdexcept>
#include <string>

namespace slashtree {

/// Base for every error raised by the library. `exit_code()` is what the CLI
/// returns when the error escapes a command.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 3; }
};

/// Contract violation on an input graph or parameter set.
class GraphError : public Error {
public:
    using Error::Error;
};

/// s-t paths of unequal metric length where equal lengths are required.
class NotGeodesicStGraph : public GraphError {
public:
    using GraphError::GraphError;
};

/// A cycle without a vertex splitting it into two arcs of equal length.
class NoBalancedSplit : public GraphError {
public:
    using GraphError::GraphError;
};

/// The input graph is a path where a cycle is required.
class NoCycle : public GraphError {
public:
    using GraphError::GraphError;
};

/// Malformed serialized input.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A configured size cap would be exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// A mechanically checked mathematical statement failed.
class AssertionFailure : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

}  // namespace slashtree
