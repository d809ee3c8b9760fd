// SPDX-License-Identifier: Apache-2.0

#include "tfmp/errors.hpp"

namespace tfmp {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out = "instance validation failed with " + std::to_string(issues.size()) +
                    " issue(s):";
  for (const auto& i : issues) out += "\n  " + i.location + ": " + i.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

FractionalSolution::FractionalSolution(int column, double value)
    : Error("column " + std::to_string(column) + " has fractional value " +
            std::to_string(value)),
      column_(column),
      value_(value) {}

}  // namespace tfmp
