#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metasearch {

// Base for every failure raised by the pipeline.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (empty token list, disabled provider, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class LoadError : public Error {
public:
    using Error::Error;
};

class EmptyInventoryError : public LoadError {
public:
    using LoadError::LoadError;
};

// Raised by the result-page parsers. `location` is either a byte offset
// ("byte 17") or an element path ("$.results[2].url").
class ParseError : public Error {
public:
    ParseError(std::string location, const std::string& what)
        : Error("parse error at " + location + ": " + what), location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class IndexingError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class PersistenceError : public Error {
public:
    using Error::Error;
};

class TransportError : public Error {
public:
    using Error::Error;
};

class TimeoutError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace metasearch
