#ifndef ORDEPTH_ERROR_HPP_
#define ORDEPTH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ordepth {

// Dimension/extent disagreements between tensors.
struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values (bad ranges, malformed specs, out-of-range indices).
struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Object used in a state it does not support (e.g. stale tape).
struct StateError : std::runtime_error {
  explicit StateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values where finite ones are required (training abort path).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ordepth

#endif  // ORDEPTH_ERROR_HPP_
