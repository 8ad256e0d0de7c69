#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stn {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input data violates a precondition (wrong shape, non-finite values, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A tuning parameter is out of its admissible range.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// An iterative scheme produced non-finite values; the message names the step.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Malformed file content; carries the byte offset where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    std::size_t byte_offset;
};

// Filesystem-level failure; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace stn
