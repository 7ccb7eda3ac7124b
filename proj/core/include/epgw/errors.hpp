#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace epgw {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One failed invariant on a physical parameter.
struct Violation {
    std::string owner;      // e.g. "resonator_1", "cavity_2", "" for top-level fields
    std::string parameter;  // e.g. "mass"
    double value = 0.0;

    std::string qualified_name() const {
        return owner.empty() ? parameter : owner + "." + parameter;
    }
};

/// A parameter that must be positive (or non-negative) is not. Carries every
/// violation found, not just the first.
class NonPositiveParameter : public Error {
public:
    explicit NonPositiveParameter(std::vector<Violation> violations);
    NonPositiveParameter(std::string parameter, double value);

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    /// Name of the first offending parameter (unqualified).
    const std::string& parameter() const noexcept { return violations_.front().parameter; }
    double value() const noexcept { return violations_.front().value; }

private:
    std::vector<Violation> violations_;
};

/// Bad grid bounds, point counts, or otherwise malformed request arguments.
class InvalidRange : public Error {
public:
    using Error::Error;
};

/// Errors rooted in the physics of the configured device rather than in
/// malformed input: there is no exceptional point, or the caller is not at it.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoEP : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroCoupling : public DomainError {
public:
    using DomainError::DomainError;
};

class NotAtEP : public DomainError {
public:
    using DomainError::DomainError;
};

class SamplingTooCoarse : public Error {
public:
    using Error::Error;
};

class TooFewSamples : public Error {
public:
    using Error::Error;
};

/// Malformed config text.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

class UnknownKey : public Error {
public:
    explicit UnknownKey(std::string key)
        : Error("unknown config key '" + key + "'"), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace epgw
