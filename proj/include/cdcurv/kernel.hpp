#pragma once

// Diagonal reproducing kernels K(z, w) = sum_i a_i z^i conj(w)^i on the
// unit disk, stored through their radial restriction K(w, w) = sum a_i t^i.

#include <memory>
#include <optional>
#include <vector>

#include "cdcurv/fps.hpp"
#include "cdcurv/json_io.hpp"

namespace cdcurv {

/// Small expression grammar for radial metrics:
///   power   (1 - t)^(-alpha)
///   coeffs  explicit coefficient list
///   product left * right
///   exp_poly base * exp(poly(t))
/// Any node may carry a positive "scale" factor.
struct KernelSpec {
  enum class Kind { power, coeffs, product, exp_poly };

  Kind kind = Kind::power;
  Rational alpha = 1;
  std::vector<Rational> a;
  std::vector<Rational> poly;
  std::shared_ptr<const KernelSpec> left;
  std::shared_ptr<const KernelSpec> right;
  std::shared_ptr<const KernelSpec> base;
  std::optional<Rational> scale;

  static KernelSpec power(const Rational& alpha);
  static KernelSpec coefficients(std::vector<Rational> a);
  static KernelSpec product(KernelSpec l, KernelSpec r);
  static KernelSpec exp_poly(KernelSpec base, std::vector<Rational> poly);
  KernelSpec scaled(const Rational& factor) const;
};

KernelSpec kernel_spec_from_json(const Json& j);
Json to_json(const KernelSpec& spec);

/// The radial metric described by a spec, without normalization.
RadialSeries metric_series(const KernelSpec& spec, int order);

class DiagonalKernel {
 public:
  /// a must have a_0 = 1 (NonUnitConstant otherwise).
  explicit DiagonalKernel(RadialSeries a, std::optional<KernelSpec> tag = std::nullopt);

  const RadialSeries& coeffs() const { return a_; }
  const Rational& operator[](int i) const { return a_[i]; }
  int order() const { return a_.order(); }
  const std::optional<KernelSpec>& tag() const { return tag_; }

 private:
  RadialSeries a_;
  std::optional<KernelSpec> tag_;
};

/// Builds the kernel, dividing out a positive constant term.
/// Throws MalformedSpec or NonUnitConstant.
DiagonalKernel kernel_from_spec(const KernelSpec& spec, int order);
DiagonalKernel power_kernel(const Rational& alpha, int order);

struct PdVerdict {
  bool positive_definite = true;
  int first_offending_index = -1;
};

/// A diagonal kernel is positive definite iff every a_i >= 0.
PdVerdict validate_pd(const DiagonalKernel& k);

/// -dd-bar log h for a radial metric h with h(0) > 0.
RadialSeries line_curvature(const RadialSeries& h);

/// b_n = t^n coefficient of log K(w, w).
struct LogCoeffs {
  RadialSeries series;
  const Rational& b(int n) const { return series[n]; }
  int order() const { return series.order(); }
};

LogCoeffs log_coeffs(const DiagonalKernel& k);

/// K(w,w) * (-curvature) as a radial series.
RadialSeries curvature_product_coeffs(const DiagonalKernel& k);
/// Same series assembled term by term from the log coefficients:
/// coefficient of t^k is (k+1)^2 b_{k+1} + sum_{i=1..k} i^2 a_{k+1-i} b_i.
RadialSeries curvature_product_from_log(const DiagonalKernel& k, const LogCoeffs& b);

struct PdBound {
  Rational bound;               ///< lower bound on a_{n+1}
  bool satisfied = false;       ///< a_{n+1} >= bound
  Rational product_coefficient; ///< t^n coefficient of K * (-curvature)
  bool product_nonnegative = false;
};

/// Necessary condition for K * dd-bar log K to be positive definite,
/// evaluated at index n.  Throws InsufficientOrder when a_{n+1} is unknown.
PdBound pd_necessary_bound(const DiagonalKernel& k, int n);

/// (1 - p t / 2)^(-2/p).
DiagonalKernel canonical_p_kernel(int p, int order);

struct PowerEquationVerdict {
  bool holds = false;
  int first_mismatch = -1;
  RadialSeries lhs;  ///< dd-bar log K
  RadialSeries rhs;  ///< K^p
};

/// Compares dd-bar log K with K^p through the shared order.
PowerEquationVerdict check_power_equation(const DiagonalKernel& k, int p);

/// Solves dd-bar log K = K^p for a_1, a_2, ... starting from a_0 = 1.
DiagonalKernel solve_power_equation(int p, int order);

/// sum_{k=1..n} (-1)^(k-1)/k * sum over compositions i_1+...+i_k = n of
/// prod (i_j + 1), by explicit enumeration.  n is capped at 22.
Rational alternating_composition_sum(int n);

inline constexpr int kCompositionSumMaxN = 22;

}  // namespace cdcurv
