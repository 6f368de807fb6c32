#pragma once

#include <stdexcept>
#include <string>

namespace abduce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax, arity conflicts, forbidden predicate placement.
class InputError : public Error {
public:
    InputError(const std::string& what, unsigned line = 0, unsigned column = 0)
        : Error(line == 0 ? what : std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    unsigned line() const noexcept { return line_; }
    unsigned column() const noexcept { return column_; }

private:
    unsigned line_;
    unsigned column_;
};

class InvalidPosition : public Error {
public:
    using Error::Error;
};

/// Raised when a substitution applied to an A-set maps a constraint variable
/// to something other than a variable or an abducible constant.
class NotPure : public Error {
public:
    using Error::Error;
};

/// A configured combinatorial bound was exceeded (oracle universes, enumerations).
class BoundExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace abduce
