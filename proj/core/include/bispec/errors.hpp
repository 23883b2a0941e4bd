#ifndef BISPEC_ERRORS_HPP
#define BISPEC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bispec {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (files, matrices).
class InputError : public Error {
public:
  using Error::Error;
};

class InputShapeError : public InputError {
public:
  using InputError::InputError;
};

class InputValueError : public InputError {
public:
  using InputError::InputError;
};

class ParseError : public InputError {
public:
  ParseError(std::string const &what, std::size_t line, std::size_t column)
  : InputError("line " + std::to_string(line) + ", column " +
               std::to_string(column) + ": " + what),
    line_(line), column_(column)
  {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class PartitionError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class ScaleError : public Error {
public:
  using Error::Error;
};

// Power iteration hit its cap; [lower, upper] is the last bracket on rho.
class ConvergenceError : public Error {
public:
  ConvergenceError(std::string const &what, double lower, double upper)
  : Error(what), lower_(lower), upper_(upper)
  {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

private:
  double lower_;
  double upper_;
};

// The two below can only fire on an implementation bug: they mean a proved
// inequality or characterization failed numerically.
class CertificateViolation : public Error {
public:
  using Error::Error;
};

class TheoremViolation : public Error {
public:
  using Error::Error;
};

} // namespace bispec

#endif // BISPEC_ERRORS_HPP
