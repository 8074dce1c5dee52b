#ifndef HSD_ERROR_HPP
#define HSD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hsd
{

// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error
{
public:
    DivisionByZero() : Error("division by zero") {}
};

// Series inversion of an element with zero constant term.
class NotAUnit : public Error
{
public:
    using Error::Error;
};

// Operands live in different rings (field or variable count mismatch).
class IncompatibleAmbient : public Error
{
public:
    using Error::Error;
};

class ComponentOutOfRange : public Error
{
public:
    using Error::Error;
};

class OrderViolation : public Error
{
public:
    using Error::Error;
};

class LengthMismatch : public Error
{
public:
    using Error::Error;
};

// Degree-1 parts of a family do not form a basis (determinant not a unit).
class NotABasis : public Error
{
public:
    using Error::Error;
};

class PrecisionExhausted : public Error
{
public:
    using Error::Error;
};

// Malformed input: bad text syntax, invalid JSON object, broken invariant on load.
class InvalidInput : public Error
{
public:
    using Error::Error;
};

} // namespace hsd

#endif
