#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax or semantic problem in an input file; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An operation needed data above the degree cutoff.
class TruncationError : public Error {
 public:
  TruncationError(int needed, int cutoff)
      : Error("degree " + std::to_string(needed) + " exceeds the cutoff " + std::to_string(cutoff)),
        needed_(needed),
        cutoff_(cutoff) {}

  int needed() const noexcept { return needed_; }
  int cutoff() const noexcept { return cutoff_; }

 private:
  int needed_;
  int cutoff_;
};

class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch() : Error("operands are over different alphabets or fields") {}
};

// A structural axiom failed; the message names a witness.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but outside what a construction supports.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace fpn
