#pragma once

#include <stdexcept>
#include <string>

namespace fairshot {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (bad row, wrong column count, unreadable path).
class LoadError : public Error {
public:
    using Error::Error;
};

/// Dataset description is inconsistent or a value violates it.
class SchemaError : public Error {
public:
    using Error::Error;
};

class SplitError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the given batch (empty subgroup, missing class,
/// all rows abstained, empty subset for ratio computation).
class MetricError : public Error {
public:
    using Error::Error;
};

/// A (z,y) cell cannot supply its required number of records.
class QuotaError : public Error {
public:
    using Error::Error;
};

/// An operation's stated precondition does not hold for the given input.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ClusteringError : public Error {
public:
    using Error::Error;
};

class SelectionError : public Error {
public:
    using Error::Error;
};

/// EvolScore could not be computed for an iteration.
class ScoreError : public Error {
public:
    using Error::Error;
};

class TemplateError : public Error {
public:
    using Error::Error;
};

class BackendError : public Error {
public:
    using Error::Error;
};

/// Prompt exceeds the backend's capability; raised before any call is made.
class LengthError : public BackendError {
public:
    using BackendError::BackendError;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A demonstration id appeared in the evaluation slice.
class ContaminationError : public Error {
public:
    using Error::Error;
};

/// A whole run failed (too many skipped iterations, excessive abstentions).
class RunError : public Error {
public:
    using Error::Error;
};

} // namespace fairshot
