#pragma once

// Seeded generators for randomized identity checks.

#include <random>

#include "cdcurv/fps.hpp"
#include "cdcurv/matrix.hpp"

namespace cdcurv {

using Rng = std::mt19937_64;
inline constexpr unsigned long long kDefaultSeed = 20240607ULL;

/// p / q with |p| <= max_num and 1 <= q <= max_den.
Rational random_rational(Rng& rng, int max_num = 9, int max_den = 6);

/// With force_singular, the last row is a rational combination of the
/// first two.
RationalMatrix random_rational_matrix(Rng& rng, int n, bool force_singular = false);

/// Constant term one, remaining coefficients random.
RadialSeries random_unit_series(Rng& rng, int order);

/// Random radial metric with positive coefficients and h(0) > 0.
RadialSeries random_positive_series(Rng& rng, int order);

/// Gram matrix of a frame of integer polynomial vectors whose constant
/// parts are unimodular, as a series matrix of the given order.
SeriesMatrix random_gram(Rng& rng, int rank, int order, int degree = 3);

}  // namespace cdcurv
