#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: dangling ids, bad JSON, non-manifold meshes.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A preimage label that is not legal for the requested dimension.
class LabelError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (wrong dimension, empty input).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A construction step was asked to work on a graph that violates the
/// realization hypotheses.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InvariantError : public Error {
public:
    InvariantError(std::string id, const std::string& what)
        : Error("invariant '" + id + "' violated: " + what), id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

}  // namespace reeb
