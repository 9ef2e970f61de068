#pragma once

#include <stdexcept>
#include <string>

namespace jordan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownGenerator : public Error {
public:
    explicit UnknownGenerator(const std::string& name)
        : Error("unknown generator '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// The rewrite step budget ran out, or the relation table is cyclic.
class FuelExhausted : public Error {
public:
    using Error::Error;
};

class OrderMismatch : public Error {
public:
    OrderMismatch(int a, int b)
        : Error("truncation orders differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class AlgebraMismatch : public Error {
public:
    using Error::Error;
};

/// An h-series with a nonzero h^0 part was fed to an infinite power series.
class NonNilpotentArgument : public Error {
public:
    using Error::Error;
};

class NotDivisible : public Error {
public:
    using Error::Error;
};

class NonCommutativeInput : public Error {
public:
    using Error::Error;
};

class NoSuchForm : public Error {
public:
    using Error::Error;
};

class NonNilpotentExponent : public Error {
public:
    using Error::Error;
};

/// A contracted structure map kept a negative power of the contraction parameter.
class NonContractible : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class TypeError : public Error {
public:
    using Error::Error;
};

} // namespace jordan
