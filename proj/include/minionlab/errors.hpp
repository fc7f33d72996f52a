#pragma once

#include <stdexcept>
#include <string>

namespace minionlab {

/// Raised when an operation is asked to exceed its documented size cap.
class CapError : public std::runtime_error {
 public:
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed input files.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minionlab
