#pragma once

#include <stdexcept>
#include <string>

namespace rieszprod {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad literals, bad JSON, bad CSV.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid arguments (violated preconditions).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Low-level arithmetic misuse (division by zero, negative sqrt, ...).
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A ball is too wide, or a comparison cannot be certified at any allowed
// precision. Raised instead of returning a silently useless enclosure.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// An enumeration or expansion would exceed its configured size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

// A construction cannot satisfy its admissibility condition even after the
// allowed prefix drops.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A check that is supposed to hold for mathematical reasons failed. This is
// the "would falsify the result being demonstrated" class: it indicates a bug
// in this library, not bad user input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rieszprod
