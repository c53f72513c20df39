#ifndef BSL_ERRORS_HPP
#define BSL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bsl {

// Invalid inputs: bad dimensions, out-of-range indices, malformed specs.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerically rank-deficient subdictionary encountered during a solve.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver could not reach its goal (e.g. unachievable confidence).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bsl

#endif  // BSL_ERRORS_HPP
