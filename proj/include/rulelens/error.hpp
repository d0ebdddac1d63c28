#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rulelens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed facts, rules, or statement text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::string detail, std::size_t line, std::size_t col)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + detail),
          detail_(std::move(detail)), line_(line), col_(col) {}

    const std::string& detail() const noexcept { return detail_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t col_;
};

/// A statement, subject, model or fixture that does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Bad builtin call: unknown name, wrong arity, or an unbound input.
class BuiltinError : public Error {
public:
    using Error::Error;
};

/// Forward chaining produced more statements than the configured cap.
class InferenceCapExceeded : public Error {
public:
    explicit InferenceCapExceeded(std::size_t cap)
        : Error("inference cap of " + std::to_string(cap) +
                " inferred statements exceeded; the rule set may not terminate"),
          cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

}  // namespace rulelens
