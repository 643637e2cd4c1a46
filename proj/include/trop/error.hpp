#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trop {

// Base for every error caused by bad input (CLI maps these to exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

// A documented precondition of an operation does not hold for its arguments.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

class OverflowError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace trop
