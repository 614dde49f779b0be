#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nagplan {

/// Query arguments that do not describe a valid lattice location or vertex.
class InvalidQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed environment input. `offset()` is the byte position where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A graph invariant was broken (e.g. a came_from chain that does not reach the start).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The goal has no vertex inside the explored tether workspace.
class UnreachableUnderConstraint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedRender : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nagplan
