#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tamecx {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called with arguments that violate its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. Carries a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

} // namespace tamecx
