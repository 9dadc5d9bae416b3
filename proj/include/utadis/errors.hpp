#pragma once

#include <stdexcept>
#include <string>

namespace utadis {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (out-of-scale
/// performance, empty sample, mismatched breakpoint grids, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The inputs are well-formed but the requested setup is not supported or is
/// missing a required artifact.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The preference information admits no compatible sorting model, or a value
/// function cannot separate the classes of the examples.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The compatible set is feasible but has (numerically) empty interior.
class DegenerateInteriorError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The LP/MILP backend failed. Never used to report infeasibility.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, int line, const std::string& what)
      : Error(file + (line > 0 ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }

 private:
  std::string file_;
  int line_;
};

}  // namespace utadis
