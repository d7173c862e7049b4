#pragma once

#include <stdexcept>
#include <string>

namespace odebench {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Thrown by a stepper when the right-hand side returns NaN or +-inf.
class NonFiniteEvaluation : public Error {
 public:
  NonFiniteEvaluation(double x, double y)
      : Error("non-finite rhs evaluation at x=" + std::to_string(x) +
              ", y=" + std::to_string(y)),
        x_(x),
        y_(y) {}

  double x() const { return x_; }
  double y() const { return y_; }

 private:
  double x_;
  double y_;
};

class InvalidTableau : public Error {
 public:
  using Error::Error;
};

class NoOverlap : public Error {
 public:
  using Error::Error;
};

class ZeroReferenceSum : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace odebench
