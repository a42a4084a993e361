#pragma once

#include <stdexcept>
#include <string>

namespace alphatest {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, wrong shapes, violated preconditions.
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical failure on otherwise well-formed input.
/// The CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

#define ALPHATEST_DECLARE_ERROR(Name, Base) \
  class Name : public Base {                \
   public:                                  \
    using Base::Base;                       \
  };

ALPHATEST_DECLARE_ERROR(DimensionError, InputError)
ALPHATEST_DECLARE_ERROR(NegativeInput, InputError)
ALPHATEST_DECLARE_ERROR(EmptyTable, InputError)
ALPHATEST_DECLARE_ERROR(ParseError, InputError)
ALPHATEST_DECLARE_ERROR(ShapeMismatch, InputError)
ALPHATEST_DECLARE_ERROR(TooFewObservations, InputError)
ALPHATEST_DECLARE_ERROR(ConfigError, InputError)

ALPHATEST_DECLARE_ERROR(SingularDesign, NumericError)
ALPHATEST_DECLARE_ERROR(DegenerateDesign, NumericError)
ALPHATEST_DECLARE_ERROR(ConvergenceError, NumericError)
ALPHATEST_DECLARE_ERROR(ZeroResidualVariance, NumericError)
ALPHATEST_DECLARE_ERROR(NonPositiveDiagonal, NumericError)
ALPHATEST_DECLARE_ERROR(DegenerateDof, NumericError)
ALPHATEST_DECLARE_ERROR(NotPositiveDefinite, NumericError)

#undef ALPHATEST_DECLARE_ERROR

}  // namespace alphatest
