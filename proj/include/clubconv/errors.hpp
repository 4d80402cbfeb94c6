#pragma once

#include <stdexcept>
#include <string>

namespace clubconv {

// Input-side failures (bad files, bad dimensions, bad labels). CLI exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures (degenerate variances, undefined logs). CLI exit code 2.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};
struct NonPositiveValue : InputError {
  using InputError::InputError;
};
struct DuplicateUnit : InputError {
  using InputError::InputError;
};
struct UnknownPeriod : InputError {
  using InputError::InputError;
};
struct UnknownUnit : InputError {
  using InputError::InputError;
};
struct AlreadyLog : InputError {
  using InputError::InputError;
};
struct NotLogScale : InputError {
  using InputError::InputError;
};
struct OverlappingSubsets : InputError {
  using InputError::InputError;
};

struct ParseError : InputError {
  using InputError::InputError;
};
struct RaggedPanel : InputError {
  using InputError::InputError;
};
struct DuplicateCell : InputError {
  using InputError::InputError;
};

struct AllPeriodsDegenerate : NumericalError {
  using NumericalError::NumericalError;
};
struct ZeroCrossSectionMean : NumericalError {
  using NumericalError::NumericalError;
};
struct ZeroVariancePeriod : NumericalError {
  using NumericalError::NumericalError;
};
struct WindowTooShort : NumericalError {
  using NumericalError::NumericalError;
};
struct ConstantRegressor : NumericalError {
  using NumericalError::NumericalError;
};
struct LagTooLarge : NumericalError {
  using NumericalError::NumericalError;
};
struct NonPositiveOutput : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace clubconv
