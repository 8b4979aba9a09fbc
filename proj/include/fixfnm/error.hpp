#pragma once

#include <stdexcept>
#include <string>

namespace fixfnm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different alphabets (rank or letter differ).
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

/// A generator table does not preserve the relation [a_i, b_j] = 1.
class CommutationViolation : public Error {
 public:
  CommutationViolation(int a_index, int b_index, int component)
      : Error("images of a" + std::to_string(a_index) + " and b" +
              std::to_string(b_index) + " do not commute in component " +
              std::to_string(component)),
        a_index_(a_index),
        b_index_(b_index),
        component_(component) {}

  int a_index() const { return a_index_; }
  int b_index() const { return b_index_; }
  int component() const { return component_; }

 private:
  int a_index_;
  int b_index_;
  int component_;
};

/// A valid endomorphism whose shape matches none of the eight type tags.
class UnclassifiableEndo : public Error {
 public:
  using Error::Error;
};

/// The decision procedure needs the first endomorphism to be of type VI/VII.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// A fixed subgroup was required for an endomorphism outside the supported
/// class and no declaration covers it.
class MissingOracle : public Error {
 public:
  explicit MissingOracle(const std::string& component)
      : Error("no fixed subgroup available for " + component),
        component_(component) {}

  const std::string& component() const { return component_; }

 private:
  std::string component_;
};

/// A declared fixed-subgroup basis failed verification or the ball audit.
class DeclaredFixError : public Error {
 public:
  using Error::Error;
};

/// Ball enumeration requested beyond the configured cap.
class RadiusOverCap : public Error {
 public:
  using Error::Error;
};

}  // namespace fixfnm
