#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid user input (files, matrices, flags).
class InputError : public Error {
public:
    using Error::Error;
};

/// A distance matrix failed validation at entry (row, col).
class ValidationError : public InputError {
public:
    ValidationError(const std::string& what, std::size_t row, std::size_t col)
        : InputError(what + " at (" + std::to_string(row) + "," + std::to_string(col) + ")"),
          row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// A size cap (points or cells) would be exceeded.
class CapError : public Error {
public:
    CapError(const std::string& what, unsigned long long requested, unsigned long long cap)
        : Error(what + ": " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}

    unsigned long long requested() const noexcept { return requested_; }
    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long requested_;
    unsigned long long cap_;
};

/// A filtered complex violates one of its structural invariants.
class ComplexError : public Error {
public:
    using Error::Error;
};

} // namespace kph
