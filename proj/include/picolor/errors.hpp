#pragma once

#include <stdexcept>
#include <string>

namespace picolor {

/// Malformed or inconsistent caller input (bad indices, length mismatch,
/// duplicate ids). Surfaces as exit status 2 from the CLI.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text that could not be parsed. Carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exhaustive oracle refused because the state space exceeds its budget.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace picolor
