#pragma once

#include <stdexcept>
#include <string>

namespace hermlat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (asymmetric Gram, indefinite
/// form, non-squarefree d, out-of-range rank, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but outside what the implementation handles,
/// e.g. Euclidean division in a non norm-Euclidean field.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hermlat
