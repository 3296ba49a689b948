#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace giant {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear algebra.
class NumericBreakdown : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Materializing a d x d matrix was requested above the oracle size limit.
class OracleSizeError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Communication fabric.
class FabricPoisoned : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Solvers.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class ReferenceFailure : public Error {
 public:
  using Error::Error;
};

// Input and configuration.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace giant
