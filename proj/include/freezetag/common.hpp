#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace freezetag {

inline constexpr double kPi = std::numbers::pi;

// Bad user input (malformed file, precondition violation). CLI exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A proven bound was exceeded or an internal contract broke. CLI exit code 3.
struct invariant_violation : std::runtime_error {
  explicit invariant_violation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace freezetag
