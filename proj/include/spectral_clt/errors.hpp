#pragma once

#include <stdexcept>
#include <string>

namespace spectral_clt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid spiked-model specification.
class ModelError : public Error {
 public:
  using Error::Error;
};

class NotASpike : public ModelError {
 public:
  using ModelError::ModelError;
};

class InvalidSpike : public ModelError {
 public:
  using ModelError::ModelError;
};

class TooManySpikes : public ModelError {
 public:
  using ModelError::ModelError;
};

class DuplicateSpike : public ModelError {
 public:
  using ModelError::ModelError;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ContourError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (files, flags, configs).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace spectral_clt
