#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace septimal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class RingMismatch : public Error
{
  public:
    RingMismatch(const std::string &lhs, const std::string &rhs)
        : Error("coefficient ring mismatch: " + lhs + " vs " + rhs)
    {
    }
};

/// Leading coefficient of a series is not invertible in its ring.
class NonUnit : public Error
{
  public:
    using Error::Error;
};

/// A coefficient-wise division left a remainder at q^exponent.
class NonExactDivision : public Error
{
  public:
    explicit NonExactDivision(std::int64_t exponent, const std::string &what = {})
        : Error("non-exact division at q^" + std::to_string(exponent) + (what.empty() ? "" : " (" + what + ")")),
          exponent_(exponent)
    {
    }

    std::int64_t exponent() const noexcept { return exponent_; }

  private:
    std::int64_t exponent_;
};

/// The residue is 0 mod 7^e so its valuation cannot be decided at this modulus.
class IndeterminateValuation : public Error
{
  public:
    using Error::Error;
};

/// An operator chain needs more input precision than was supplied.
class InsufficientPrecision : public Error
{
  public:
    InsufficientPrecision(std::int64_t required, std::int64_t available, const std::string &what)
        : Error(what + ": need precision " + std::to_string(required) + ", have " + std::to_string(available)),
          required_(required), available_(available)
    {
    }

    std::int64_t required() const noexcept { return required_; }
    std::int64_t available() const noexcept { return available_; }

  private:
    std::int64_t required_;
    std::int64_t available_;
};

/// Comparison of two series with no common known coefficient.
class EmptyOverlap : public Error
{
  public:
    using Error::Error;
};

class CapExceeded : public Error
{
  public:
    using Error::Error;
};

class DomainError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public Error
{
  public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON that does not match the relation file schema.
class SchemaError : public Error
{
  public:
    SchemaError(const std::string &path, const std::string &msg) : Error(path + ": " + msg), path_(path) {}

    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

class DuplicateKey : public Error
{
  public:
    using Error::Error;
};

/// The basis columns are linearly dependent on the rows used.
class AmbiguousDecomposition : public Error
{
  public:
    using Error::Error;
};

class NonIntegralSolution : public Error
{
  public:
    using Error::Error;
};

class NonzeroResidual : public Error
{
  public:
    explicit NonzeroResidual(std::int64_t exponent)
        : Error("series is not in the span of the basis: residual at q^" + std::to_string(exponent)),
          exponent_(exponent)
    {
    }

    std::int64_t exponent() const noexcept { return exponent_; }

  private:
    std::int64_t exponent_;
};

} // namespace septimal
