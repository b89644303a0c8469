#pragma once

#include <stdexcept>
#include <string>

namespace cprel {

// Bad user input: malformed families, tables, states, subsets.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A configured combinatorial cap or dimension bound was exceeded.
class limit_error : public std::runtime_error {
 public:
  explicit limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solve failed to reach the requested tolerance.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Target point violates the polytope constraints.
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cprel
