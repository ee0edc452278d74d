#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "cdcurv/error.hpp"
#include "cdcurv/fps.hpp"

namespace cdcurv::testing {

// C(n + r - 1, n) for integer r >= 1.
inline Rational rising_binomial(int r, int n) {
  Integer num = 1, den = 1;
  for (int i = 1; i <= n; ++i) {
    num *= r + i - 1;
    den *= i;
  }
  return Rational(num) / Rational(den);
}

// c * (1 - t)^(-r) through order.
inline RadialSeries scaled_power(const Rational& c, int r, int order) {
  RadialSeries f(order);
  for (int n = 0; n <= order; ++n) f[n] = c * rising_binomial(r, n);
  return f;
}

inline void expect_code(const std::function<void()>& f, ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace cdcurv::testing
