#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

// Base of every error raised by the library. Each subclass maps to one
// failure family so callers (the CLI in particular) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite entries, empty matrices, malformed files.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain (zero weight, zero A where A != 0 is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  IndexError(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Subspaces that are not complementary.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class BorderingError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace ginv
