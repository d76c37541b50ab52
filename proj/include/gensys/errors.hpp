#ifndef GENSYS_ERRORS_HPP_
#define GENSYS_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gensys {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration (missing difficulty, empty action
// set, unnormalized weights, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An explicit solved-set sequence that is not a nested chain.
class CapabilityError : public Error {
 public:
  CapabilityError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Code lengths that violate Kraft's inequality.
class CodingError : public Error {
 public:
  CodingError(const std::string& what, double kraft_sum)
      : Error(what), kraft_sum_(kraft_sum) {}
  double kraft_sum() const { return kraft_sum_; }

 private:
  double kraft_sum_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class EmptyTruncationError : public Error {
 public:
  using Error::Error;
};

class EmptyTailError : public Error {
 public:
  using Error::Error;
};

class InsufficientLengthError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

// Kripke model violating the frame conditions, or a bad world id.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Scenario file parse failure (with line/column when known).
class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gensys

#endif  // GENSYS_ERRORS_HPP_
