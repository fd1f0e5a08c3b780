#pragma once

#include <stdexcept>
#include <string>

namespace asdet {

// Malformed arguments: zero spinors, bad transforms, size mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Configuration too close to a coincidence for determinant evaluation.
class DegenerateInput : public std::domain_error {
 public:
  explicit DegenerateInput(const std::string& what) : std::domain_error(what) {}
};

}  // namespace asdet
