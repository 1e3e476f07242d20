#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qti {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown domain tag, pairing name or similar configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A constructor argument outside its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// System and requirement (or two requirements) disagree on the label set.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Reward machine bound and cost automaton alphabet disagree.
class BoundMismatch : public Error {
 public:
  using Error::Error;
};

/// A model failed validation where a valid one was required.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Natural-number weight or reward left the machine range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A check that the library deliberately does not offer for some pairing.
class UnsupportedCheck : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in a program or model document, with a source position.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? message
                        : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qti
