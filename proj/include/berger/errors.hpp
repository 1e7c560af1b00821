#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace berger {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text; `offset()` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// An expression was evaluated outside the domain of one of its functions.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A manifold or map description is structurally invalid.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Singular metric, point outside the chart, non-orthonormal input, ...
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to run on a chart that violates its hypotheses.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace berger
