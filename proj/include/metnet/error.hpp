#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metnet {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data. Carries the 1-based line number when known (0 otherwise).
class InputError : public Error {
public:
    InputError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller violated an operation's precondition (bad parameter values).
class ArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace metnet
