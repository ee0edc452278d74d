#include <gtest/gtest.h>

#include <cmath>

#include "cdcurv/error.hpp"
#include "cdcurv/fps.hpp"
#include "cdcurv/json_io.hpp"
#include "cdcurv/random.hpp"
#include "cdcurv/rational.hpp"

using namespace cdcurv;

namespace {

RadialSeries series(std::initializer_list<Rational> c, int order) {
  std::vector<Rational> v(c);
  return RadialSeries::from_coeffs(v, order);
}

RadialSeries geometric(int order) {
  RadialSeries f(order);
  for (int n = 0; n <= order; ++n) f[n] = 1;
  return f;
}

// Naive convolution used as an independent product oracle.
RadialSeries convolve(const RadialSeries& f, const RadialSeries& g) {
  const int order = std::min(f.order(), g.order());
  RadialSeries h(order);
  for (int n = 0; n <= order; ++n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) s = s + f[k] * g[n - k];
    h[n] = s;
  }
  return h;
}

BiSeries random_bi(Rng& rng, int order) {
  BiSeries f(order);
  for (int d = 0; d <= order; ++d)
    for (int j = 0; j <= d; ++j) f.at(d - j, j) = random_rational(rng, 5, 4);
  return f;
}

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(4) / 6), "2/3");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.2.3", "--1"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedSpec);
    }
  }
}

TEST(Rational, PowersAndBinomials) {
  EXPECT_EQ(binomial(Rational(5), 2), Rational(10));
  EXPECT_EQ(binomial(Rational(-2), 3), Rational(-4));
  EXPECT_EQ(pow_int(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(rational_power(Rational(4, 9), Rational(3, 2)), Rational(8, 27));
  EXPECT_FALSE(rational_power(Rational(2), Rational(1, 2)).has_value());
}

TEST(RadialSeries, DifferenceOfSquares) {
  const auto p = series({1, 1}, 6) * series({1, -1}, 6);
  EXPECT_EQ(p, series({1, 0, -1}, 6));
}

TEST(RadialSeries, TelescopingProduct) {
  const int order = 10;
  const auto p = geometric(order) * series({1, -1}, order);
  EXPECT_EQ(p, RadialSeries::constant(1, order));
}

TEST(RadialSeries, ProductMatchesNaiveConvolution) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_unit_series(rng, 16);
    const auto g = random_unit_series(rng, 16);
    EXPECT_EQ(f * g, convolve(f, g));
  }
}

TEST(RadialSeries, ArithmeticTakesMinimumOrder) {
  const auto f = geometric(8);
  const auto g = geometric(5);
  EXPECT_EQ((f * g).order(), 5);
  EXPECT_EQ((f + g).order(), 5);
  EXPECT_EQ((f - g).order(), 5);
}

TEST(RadialSeries, RingDistributivity) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_unit_series(rng, 16);
    const auto g = random_unit_series(rng, 16);
    const auto h = random_unit_series(rng, 16);
    EXPECT_EQ((f + g) * h, f * h + g * h);
  }
}

TEST(RadialSeries, GeometricReciprocals) {
  const int order = 12;
  EXPECT_EQ(reciprocal(series({1, -1}, order)), geometric(order));
  RadialSeries alt(order);
  for (int n = 0; n <= order; ++n) alt[n] = n % 2 ? -1 : 1;
  EXPECT_EQ(reciprocal(series({1, 1}, order)), alt);
}

TEST(RadialSeries, ReciprocalRoundTrip) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_unit_series(rng, 20);
    EXPECT_EQ(f * reciprocal(f), RadialSeries::constant(1, 20));
  }
}

TEST(RadialSeries, ReciprocalOfZeroConstantThrows) {
  try {
    reciprocal(series({0, 1}, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroConstantTerm);
  }
}

TEST(RadialSeries, LogOfOneAndOfGeometric) {
  EXPECT_TRUE(log(RadialSeries::constant(1, 10)).is_zero());
  const auto l = log(geometric(10));
  EXPECT_EQ(l[0], 0);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(l[n], Rational(1, n));
}

TEST(RadialSeries, LogNeedsUnitConstant) {
  try {
    log(series({2, 1}, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstantTermNotOne);
  }
}

TEST(RadialSeries, ExpLogRoundTrip) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_unit_series(rng, 32);
    EXPECT_EQ(exp(log(f)), f);
  }
}

TEST(RadialSeries, ExpOfZeroIsOne) { EXPECT_EQ(exp(RadialSeries(7)), RadialSeries::constant(1, 7)); }

TEST(RadialSeries, ExpNeedsZeroConstant) {
  try {
    exp(series({1, 1}, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IrrationalScale);
  }
}

TEST(RadialSeries, ExpPowBinomial) {
  const auto f = exp_pow(series({1, -1}, 12), -2);
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(f[n], n + 1);
}

TEST(RadialSeries, ExpPowCanonicalSzego) {
  // (1 - p t / 2)^(-2/p) at p = 2
  EXPECT_EQ(exp_pow(series({1, -1}, 15), Rational(-1)), geometric(15));
}

TEST(RadialSeries, ExpPowIntegerAgreesWithRepeatedProduct) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_unit_series(rng, 12);
    EXPECT_EQ(exp_pow(f, 3), f * f * f);
    EXPECT_EQ(exp_pow(f, 3), pow(f, 3));
    EXPECT_EQ(exp_pow(f, -1), reciprocal(f));
  }
}

TEST(RadialSeries, ExpPowFractionalRoundTrip) {
  Rng rng(6);
  const auto f = random_unit_series(rng, 16);
  const auto root = exp_pow(f, Rational(1, 3));
  EXPECT_EQ(root * root * root, f);
}

TEST(RadialSeries, ExpPowFactorsOutRationalScale) {
  const auto f = series({4, 4}, 6);  // 4 (1 + t)
  const auto s = exp_pow(f, Rational(1, 2));
  EXPECT_EQ(s * s, f);
  EXPECT_EQ(s[0], 2);
}

TEST(RadialSeries, ExpPowIrrationalScaleThrows) {
  try {
    exp_pow(series({2, 1}, 6), Rational(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IrrationalScale);
  }
}

TEST(RadialSeries, ExpPowNonpositiveConstantThrows) {
  try {
    exp_pow(series({-1, 1}, 6), Rational(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstantTermNotOne);
  }
}

TEST(RadialSeries, DelDelbarExamples) {
  EXPECT_EQ(del_delbar_radial(RadialSeries::monomial(1, 1, 8)), RadialSeries::constant(1, 7));
  RadialSeries f(10);
  for (int n = 1; n <= 10; ++n) f[n] = Rational(1, n);
  const auto d = del_delbar_radial(f);
  EXPECT_EQ(d.order(), 9);
  for (int n = 0; n <= 9; ++n) EXPECT_EQ(d[n], n + 1);
}

TEST(RadialSeries, DelDelbarMatchesBivariatePath) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_unit_series(rng, 14);
    const auto bi = radial_restrict(radial_lift(f).d_u().d_v());
    EXPECT_EQ(bi, del_delbar_radial(f));
  }
}

TEST(RadialSeries, EvaluateExamples) {
  EXPECT_DOUBLE_EQ(evaluate(series({1, -1}, 3), 0.5), 0.5);
  RadialSeries f(32);
  for (int n = 0; n <= 32; ++n) f[n] = n + 1;
  EXPECT_NEAR(evaluate(f, 0.09), 1 / (0.91 * 0.91), 1e-12);
  Rng rng(8);
  const auto g = random_unit_series(rng, 10);
  EXPECT_DOUBLE_EQ(evaluate(g, 0.0), g[0].get_d());
}

TEST(RadialSeries, AgreeAndFirstMismatch) {
  const auto f = geometric(6);
  auto g = geometric(4);
  EXPECT_TRUE(agree(f, g));
  g[3] = 2;
  EXPECT_FALSE(agree(f, g));
  EXPECT_EQ(first_mismatch(f, g), 3);
  EXPECT_EQ(first_mismatch(f, f), -1);
}

TEST(BiSeries, MonomialDerivatives) {
  const auto f = BiSeries::monomial(2, 1, 1, 6);
  EXPECT_EQ(f.d_u(), BiSeries::monomial(1, 1, 2, 5));
  EXPECT_EQ(wirtinger(f, Wirtinger::d_v), BiSeries::monomial(2, 0, 1, 5));
}

TEST(BiSeries, MixedPartialsCommute) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_bi(rng, 10);
    EXPECT_EQ(f.d_u().d_v(), f.d_v().d_u());
  }
}

TEST(BiSeries, DiagonalOfMixedPartialOfLift) {
  RadialSeries f(9);
  for (int n = 0; n <= 9; ++n) f[n] = Rational(n * n + 1) / (n + 2);
  const auto g = radial_lift(f).d_u().d_v();
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(g.coeff(n - 1, n - 1), f[n] * n * n);
}

TEST(BiSeries, LiftAndRestrict) {
  const auto lifted = radial_lift(series({1, 1}, 1));
  EXPECT_EQ(lifted.order(), 2);
  EXPECT_EQ(lifted.coeff(0, 0), 1);
  EXPECT_EQ(lifted.coeff(1, 1), 1);
  EXPECT_TRUE(lifted.is_radial());
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_unit_series(rng, 12);
    EXPECT_EQ(radial_restrict(radial_lift(f)), f);
  }
}

TEST(BiSeries, RestrictOfOffDiagonalThrows) {
  try {
    radial_restrict(BiSeries::monomial(2, 1, 1, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRadial);
  }
}

TEST(BiSeries, ProductMatchesDirectDoubleSum) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_bi(rng, 8);
    const auto g = random_bi(rng, 8);
    const auto h = f * g;
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; i + j <= 8; ++j) {
        Rational s = 0;
        for (int a = 0; a <= i; ++a)
          for (int b = 0; b <= j; ++b) s = s + f.coeff(a, b) * g.coeff(i - a, j - b);
        EXPECT_EQ(h.coeff(i, j), s);
      }
  }
}

TEST(BiSeries, ReciprocalRoundTrip) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_bi(rng, 10);
    f.at(0, 0) = 1 + abs(f.coeff(0, 0));
    EXPECT_EQ(f * reciprocal(f), BiSeries::constant(1, 10));
  }
  try {
    reciprocal(BiSeries::monomial(1, 0, 1, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroConstantTerm);
  }
}

TEST(BiSeries, ConjugationSwapsIndices) {
  const auto f = BiSeries::monomial(3, 1, Rational(2, 3), 5);
  EXPECT_EQ(f.conj(), BiSeries::monomial(1, 3, Rational(2, 3), 5));
  EXPECT_EQ(f.conj().conj(), f);
}

TEST(BiSeries, ResizedPadsAndTruncates) {
  const auto f = BiSeries::monomial(1, 1, 1, 3);
  EXPECT_EQ(f.resized(6).order(), 6);
  EXPECT_EQ(f.resized(6).coeff(1, 1), 1);
  EXPECT_TRUE(f.resized(1).is_zero());
}

TEST(BiSeries, AtOutsideOrderThrows) {
  BiSeries f(3);
  EXPECT_EQ(f.coeff(4, 0), 0);
  try {
    f.at(2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(BiSeries, EvaluateAtConjugatePair) {
  const auto lifted = radial_lift(series({1, 2}, 1));
  const std::complex<double> w(0.3, 0.4);
  EXPECT_NEAR(evaluate_at(lifted, w).real(), 1 + 2 * std::norm(w), 1e-14);
  EXPECT_NEAR(evaluate_at(lifted, w).imag(), 0, 1e-14);
  const auto uu = BiSeries::monomial(2, 0, 1, 2);
  EXPECT_NEAR(std::abs(evaluate(uu, {0, 1}, {5, 0}) - std::complex<double>(-1, 0)), 0, 1e-14);
}

TEST(JsonIo, SeriesRoundTrip) {
  const auto f = series({1, Rational(-3, 4), 0, 5}, 3);
  const Json j = series_to_json(f);
  EXPECT_EQ(j.dump(), R"(["1","-3/4","0","5"])");
  EXPECT_EQ(series_from_json(j), f);
  EXPECT_EQ(rational_from_json(Json(3)), Rational(3));
  EXPECT_THROW(rational_from_json(Json(true)), Error);
}
