// Error taxonomy shared by all modules. The C API and the CLI map these
// onto status/exit codes, so every failure path in the core should throw
// one of them rather than a bare std::runtime_error.

#pragma once

#include <stdexcept>
#include <string>

namespace ranklab {

// Malformed input text: bad dates, bad numbers, wrong column counts.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Duplicate keys inside otherwise well-formed input.
class DuplicateError : public ParseError {
public:
    explicit DuplicateError(const std::string& msg) : ParseError(msg) {}
};

// Input violates a documented precondition or invariant.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cleaning / filtering step left too little data to work with.
class InsufficientDataError : public DomainError {
public:
    explicit InsufficientDataError(const std::string& msg) : DomainError(msg) {}
};

// Numerical blowup during integration or evaluation.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem problems: missing paths, unwritable outputs.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ranklab
