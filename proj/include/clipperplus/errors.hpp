#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace clipperplus {

/// Malformed caller input: bad vertex indices, infeasible parameters, parse failures.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// DIMACS parse failure; carries the 1-based line number of the offending line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : InputError("line " + std::to_string(line) + ": " + detail), line_(line), detail_(detail) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// The continuous-relaxation solver ran out of an iteration budget before
/// reaching a binary state. The last iterate is kept for diagnostics.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, std::vector<double> last_iterate, double last_penalty)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), last_penalty_(last_penalty) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double last_penalty() const noexcept { return last_penalty_; }

 private:
  std::vector<double> last_iterate_;
  double last_penalty_;
};

/// Exact search exceeded its node-expansion budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rigid alignment could not be computed (too few or degenerate correspondences).
class RegistrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clipperplus
