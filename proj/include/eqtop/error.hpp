#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqtop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed DSL or file input; carries a 1-based source position when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? message
                          : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ArityError : public Error {
public:
    ArityError(const std::string& symbol, const std::string& message)
        : Error(message), symbol_(symbol) {}
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class DuplicateSymbolError : public Error {
public:
    explicit DuplicateSymbolError(const std::string& symbol)
        : Error("duplicate operation symbol '" + symbol + "'"), symbol_(symbol) {}
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class UnknownSymbolError : public Error {
public:
    explicit UnknownSymbolError(const std::string& symbol)
        : Error("unknown operation symbol '" + symbol + "'"), symbol_(symbol) {}
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class MissingVariableError : public Error {
public:
    explicit MissingVariableError(std::size_t index)
        : Error("no binding for variable x" + std::to_string(index)), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Two structures that were expected to share a similarity type do not.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// A construction was handed inputs that violate its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace eqtop
