#include "cdcurv/random.hpp"

namespace cdcurv {

Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng));
  q /= den(rng);
  return q;
}

RationalMatrix random_rational_matrix(Rng& rng, int n, bool force_singular) {
  RationalMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_rational(rng);
  if (force_singular && n >= 2) {
    const Rational x = random_rational(rng);
    const Rational y = random_rational(rng);
    for (int j = 0; j < n; ++j) a(n - 1, j) = x * a(0, j) + y * a(1, j);
  }
  return a;
}

RadialSeries random_unit_series(Rng& rng, int order) {
  RadialSeries f(order);
  f[0] = 1;
  for (int n = 1; n <= order; ++n) f[n] = random_rational(rng);
  return f;
}

RadialSeries random_positive_series(Rng& rng, int order) {
  RadialSeries f(order);
  for (int n = 0; n <= order; ++n) {
    Rational q = abs(random_rational(rng));
    if (q == 0) q = 1;
    f[n] = n == 0 ? Rational(q + 1) : q;
  }
  return f;
}

SeriesMatrix random_gram(Rng& rng, int rank, int order, int degree) {
  // G(u, v)_{ij} = sum_k c_{k,j}(u) c_{k,i}(v) with integer polynomial
  // columns.  The constant parts form a random unimodular upper-triangular
  // matrix, so G(0, 0) is invertible over the integers.
  std::uniform_int_distribution<int> small(-3, 3);
  std::vector<std::vector<std::vector<Rational>>> c(
      static_cast<std::size_t>(rank),
      std::vector<std::vector<Rational>>(static_cast<std::size_t>(rank),
                                         std::vector<Rational>(static_cast<std::size_t>(degree + 1))));
  for (int k = 0; k < rank; ++k)
    for (int i = 0; i < rank; ++i)
      for (int d = 0; d <= degree; ++d) {
        Rational q = small(rng);
        if (d == 0) q = i == k ? Rational(1) : (k < i ? q : Rational(0));
        c[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] = q;
      }
  SeriesMatrix g(rank, BiSeries(order));
  for (int k = 0; k < rank; ++k) {
    const auto& col = c[static_cast<std::size_t>(k)];
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        for (int a = 0; a <= degree && a <= order; ++a)
          for (int b = 0; a + b <= order && b <= degree; ++b)
            g(i, j).at(a, b) += col[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] *
                                col[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
  }
  return g;
}

}  // namespace cdcurv
