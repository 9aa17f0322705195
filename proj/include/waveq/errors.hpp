#pragma once

#include <stdexcept>
#include <string>

namespace waveq {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text: CSV rows, JSON documents, config files, option values.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A command line that cannot be acted on: missing or contradictory options,
// out-of-range run configuration.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Well-formed input whose values violate a precondition: bad grids, indices
// outside a map, degenerate selections, non-finite data.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A numerical estimate that failed its self-consistency check.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// An output grid reaching beyond the region covered by a map.
class ExtentError : public Error {
public:
    explicit ExtentError(const std::string& msg) : Error(msg) {}
};

// Filesystem failures: unreadable or unwritable paths.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace waveq
