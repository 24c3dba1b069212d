#pragma once

#include <stdexcept>
#include <string>

namespace lamapf {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal consistency check fails: an audit mismatch, a
// search witness the validator rejects, and the like. Distinct from Error
// so callers can map "your input is bad" and "this library has a bug" to
// different exit codes.
struct BugError : Error {
    explicit BugError(const std::string& what) : Error(what) {}
};

// Input-format error; carries the 1-based line where parsing failed (0 if unknown).
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& what, int line_no)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
          line(line_no) {}
};

}  // namespace lamapf
