#pragma once

#include <stdexcept>
#include <string>

namespace mixcheck {

// Root of every error the library throws. Catch this in frontends.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid distribution or sampler parameters (alpha <= 0, k > n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Transition data that cannot produce a valid empirical matrix.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Inconsistent combination of otherwise valid settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixcheck
