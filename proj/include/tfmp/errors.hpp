// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tfmp {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValidationIssue {
  std::string location;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

class WindowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// A fully substituted constraint row is violated: the instance admits no
// schedule within its windows.
class InfeasibleConstruction : public Error {
 public:
  using Error::Error;
};

class FractionalSolution : public Error {
 public:
  FractionalSolution(int column, double value);
  int column() const { return column_; }
  double value() const { return value_; }

 private:
  int column_;
  double value_;
};

// Resource limits. These indicate the instance (or a bug) exceeded what the
// solver is configured for, never a legitimate optimization outcome.
class LimitError : public Error {
 public:
  using Error::Error;
};

class CycleLimit : public LimitError {
 public:
  using LimitError::LimitError;
};

class NodeLimit : public LimitError {
 public:
  using LimitError::LimitError;
};

class CapExceeded : public LimitError {
 public:
  using LimitError::LimitError;
};

// A constraint row of the formulation is violated by a feasible 0/1 point.
class InvalidInequality : public Error {
 public:
  using Error::Error;
};

class InfeasibleSubproblem : public Error {
 public:
  using Error::Error;
};

}  // namespace tfmp
