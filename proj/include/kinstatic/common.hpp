#pragma once

#include <stdexcept>
#include <string>

namespace kinstatic {

/// Raised for malformed input: unknown identifiers, dimension mismatches,
/// chart-kind mismatches and similar contract violations.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Absolute tolerance used by numeric comparisons.
inline constexpr double kDefaultTol = 1e-9;

/// Absolute tolerance used for zero tests when classifying orbits.
inline constexpr double kDefaultClassifyTol = 1e-12;

} // namespace kinstatic
