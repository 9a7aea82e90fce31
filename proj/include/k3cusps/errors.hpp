#pragma once

#include <stdexcept>
#include <string>

namespace k3cusps {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad Gram matrix, zero vector, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Intermediate value left the range of a 64-bit integer.
class Overflow : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured element budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotIsotropic : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotPrimitive : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotUnimodular : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotIsometry : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A residue that must be a unit modulo some integer is not.
class NotInvertible : public Error {
public:
    using Error::Error;
};

} // namespace k3cusps
