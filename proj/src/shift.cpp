#include "cdcurv/shift.hpp"

#include <cmath>

#include "cdcurv/error.hpp"

namespace cdcurv {

WeightedShift shift_from_kernel(const DiagonalKernel& k, int dim) {
  if (dim < 1) throw Error(ErrorCode::OutOfRange, "shift dimension must be positive");
  if (k.order() < dim)
    throw Error(ErrorCode::InsufficientOrder, "kernel needs order " + std::to_string(dim) + " for this dimension");
  WeightedShift s;
  s.dim = dim;
  s.squared_weights.reserve(static_cast<std::size_t>(dim));
  for (int n = 0; n <= dim; ++n)
    if (sgn(k[n]) <= 0) throw Error(ErrorCode::NonpositiveCoefficient, "a_" + std::to_string(n) + " is not positive");
  for (int n = 0; n < dim; ++n) s.squared_weights.push_back(k[n] / k[n + 1]);
  return s;
}

DiagonalKernel kernel_from_shift(const WeightedShift& s) {
  RadialSeries a(s.dim);
  a[0] = 1;
  for (int n = 0; n < s.dim; ++n) {
    const Rational& w = s.squared_weights[static_cast<std::size_t>(n)];
    if (sgn(w) <= 0) throw Error(ErrorCode::NonpositiveCoefficient, "squared weights must be positive");
    a[n + 1] = a[n] / w;
  }
  return DiagonalKernel(std::move(a));
}

DefectReport hypercontraction_defect(const WeightedShift& s, int m) {
  if (m < 1) throw Error(ErrorCode::OutOfRange, "defect order must be at least 1");
  DefectReport r;
  std::vector<Rational> binom(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) binom[static_cast<std::size_t>(k)] = binomial(Rational(m), static_cast<unsigned long>(k));

  for (int n = 0; n <= s.dim - m; ++n) {
    Rational entry = 0;
    Rational prod = 1;  // s_{n-k} ... s_{n-1}
    for (int k = 0; k <= std::min(m, n); ++k) {
      if (k > 0) prod *= s.squared_weights[static_cast<std::size_t>(n - k)];
      const Rational term = binom[static_cast<std::size_t>(k)] * prod;
      if (k % 2 == 0) entry += term;
      else entry -= term;
    }
    if (sgn(entry) < 0 && r.nonneg) {
      r.nonneg = false;
      r.first_negative = n;
    }
    r.diag.push_back(std::move(entry));
  }
  return r;
}

bool is_hypercontraction(const WeightedShift& s, int m) {
  for (int j = 1; j <= m; ++j)
    if (!hypercontraction_defect(s, j).nonneg) return false;
  return true;
}

std::optional<int> power_exponent(const DiagonalKernel& k) {
  if (k.order() < 1) return std::nullopt;
  const Rational& a1 = k[1];
  if (!is_integer(a1) || a1 < 1) return std::nullopt;
  const int alpha = static_cast<int>(a1.get_num().get_si());
  Rational expected = 1;
  for (int i = 1; i <= k.order(); ++i) {
    expected *= Rational(alpha + i - 1) / i;
    if (k[i] != expected) return std::nullopt;
  }
  return alpha;
}

HomogeneityVerdict homogeneity_check(const DiagonalKernel& h0, const DiagonalKernel& h1, const Rational& a) {
  HomogeneityVerdict v;
  v.alpha = power_exponent(h0);
  if (!v.alpha) {
    v.reason = "h0 is not a power kernel with integer exponent";
    return v;
  }
  const auto beta = power_exponent(h1);
  if (!beta) {
    v.reason = "h1 is not a power kernel with integer exponent";
    return v;
  }
  if (*beta != *v.alpha + 2) {
    v.reason = "exponent gap is " + std::to_string(*beta - *v.alpha) + ", not 2";
    return v;
  }
  if (sgn(a) <= 0) {
    v.reason = "intertwiner scalar a must be positive";
    return v;
  }
  const RadialSeries gap = line_curvature(h1.coeffs()) - line_curvature(h0.coeffs());
  const RadialSeries bergman = line_curvature(power_kernel(2, gap.order() + 1).coeffs());
  if (!agree(gap, bergman)) {
    v.reason = "curvature gap differs from the Bergman shift curvature";
    return v;
  }
  v.homogeneous = true;
  v.reason = "power kernels alpha and alpha + 2 with a > 0";
  return v;
}

namespace {

// log prod_{n<m} sqrt((n+1)/(n+k)).
double log_weight_product(long m, int k) {
  const auto md = static_cast<double>(m);
  return 0.5 * (std::lgamma(md + 1) + std::lgamma(static_cast<double>(k)) - std::lgamma(md + k));
}

}  // namespace

RigidityReport rigidity_exponent(int k0, int k1, long m_max) {
  if (k0 < 1 || k1 < 1) throw Error(ErrorCode::OutOfRange, "k0 and k1 must be at least 1");
  if (m_max < 100) throw Error(ErrorCode::OutOfRange, "m_max must be at least 100");
  RigidityReport r;
  r.exponent = 1 + Rational(k0 - k1) / 2;
  for (long m = 10; m <= m_max; m *= 10) {
    RigiditySample s;
    s.m = m;
    s.log_ratio = std::log(static_cast<double>(m)) + log_weight_product(m, k1) - log_weight_product(m, k0);
    s.ratio = std::exp(s.log_ratio);
    r.samples.push_back(s);
    if (m > m_max / 10) break;
  }
  const auto& last = r.samples.back();
  const auto& prev = r.samples[r.samples.size() - 2];
  r.fitted_slope = (last.log_ratio - prev.log_ratio) /
                   (std::log(static_cast<double>(last.m)) - std::log(static_cast<double>(prev.m)));
  return r;
}

}  // namespace cdcurv
