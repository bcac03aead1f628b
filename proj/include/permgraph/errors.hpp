#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permgraph {

/// Bad input to any library operation (shape, range or parameter violation).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No vertex of a graph signal yields a complete embedding vector.
class NoValidPatterns : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dynamical-system generator left the finite/bounded region.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Malformed CSV input. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permgraph
