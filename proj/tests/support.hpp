#pragma once

#include <string>

#include <gtest/gtest.h>

#include "tunnelkit/bigreal.hpp"

namespace tk_test {

using tunnelkit::BigReal;

inline BigReal rel(const BigReal& got, const BigReal& want) {
  return want.is_zero() ? abs(got) : abs((got - want) / want);
}

inline testing::AssertionResult close_abs(const BigReal& got, const BigReal& want, const BigReal& tol) {
  if (abs(got - want) <= tol) return testing::AssertionSuccess();
  return testing::AssertionFailure() << "got " << got.str(25) << " want " << want.str(25) << " tol " << tol.str(3);
}

inline testing::AssertionResult close_rel(const BigReal& got, const BigReal& want, const BigReal& tol) {
  if (rel(got, want) <= tol) return testing::AssertionSuccess();
  return testing::AssertionFailure() << "got " << got.str(25) << " want " << want.str(25) << " rel "
                                     << rel(got, want).str(3) << " > " << tol.str(3);
}

}  // namespace tk_test
