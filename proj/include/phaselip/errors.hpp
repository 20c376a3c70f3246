#pragma once

#include <stdexcept>
#include <string>

namespace phaselip {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FieldError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct DegenerateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyFrameError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FlatnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace phaselip
