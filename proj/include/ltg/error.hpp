#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltg {

enum class ErrorKind {
    Parse,
    Arity,
    Probability,
    Unsafe,
    UnknownNode,
    UnknownPredicate,
    ResourceLimit,
    LineageTooLarge,
    WmcBudget,
    TooManyVariables,
    Contract,
};

/// Base class of every error the library throws. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax and semantic errors in program text, with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& msg)
        : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace ltg
