#pragma once

// Truncated formal power series with exact rational coefficients.
//
// RadialSeries is a series in t = |w|^2.  BiSeries is a series in two
// independent variables (u, v) standing for (w, conj(w)), so that the
// Wirtinger derivatives become formal partials d/du and d/dv.  A radial
// series f(t) lifts to f(uv); a BiSeries of total order M restricts back
// to a radial series of order floor(M/2).

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cdcurv/rational.hpp"

namespace cdcurv {

inline constexpr int kDefaultOrder = 32;

class RadialSeries {
 public:
  RadialSeries() : RadialSeries(0) {}
  explicit RadialSeries(int order);
  /// Order is coeffs.size() - 1; coeffs must not be empty.
  explicit RadialSeries(std::vector<Rational> coeffs);

  static RadialSeries constant(const Rational& c, int order);
  static RadialSeries monomial(int degree, const Rational& c, int order);
  /// Zero-padded (or truncated) copy of a finite coefficient list.
  static RadialSeries from_coeffs(std::span<const Rational> coeffs, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  Rational& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
  /// Coefficient n, or zero beyond the order.
  Rational coeff(int n) const { return n <= order() ? (*this)[n] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  RadialSeries truncated(int order) const;
  bool is_zero() const;

  RadialSeries& operator+=(const RadialSeries& g);
  RadialSeries& operator-=(const RadialSeries& g);
  RadialSeries& operator*=(const Rational& c);

  friend RadialSeries operator+(RadialSeries f, const RadialSeries& g) { return f += g; }
  friend RadialSeries operator-(RadialSeries f, const RadialSeries& g) { return f -= g; }
  friend RadialSeries operator*(RadialSeries f, const Rational& c) { return f *= c; }
  friend RadialSeries operator*(const Rational& c, RadialSeries f) { return f *= c; }
  friend RadialSeries operator-(RadialSeries f) { return f *= Rational(-1); }
  friend RadialSeries operator*(const RadialSeries& f, const RadialSeries& g);

  /// Same order and same coefficients.
  friend bool operator==(const RadialSeries& f, const RadialSeries& g) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Coefficients agree through the smaller of the two orders.
bool agree(const RadialSeries& f, const RadialSeries& g);
/// First index (up to the shared order) where f and g differ, or -1.
int first_mismatch(const RadialSeries& f, const RadialSeries& g);

RadialSeries reciprocal(const RadialSeries& f);
/// Requires f_0 = 1; integrates f'/f.
RadialSeries log(const RadialSeries& f);
/// Requires f_0 = 0.
RadialSeries exp(const RadialSeries& f);
/// f^r.  A constant term c != 1 is factored out and reapplied only when
/// c^r is rational (IrrationalScale otherwise).
RadialSeries exp_pow(const RadialSeries& f, const Rational& r);
/// Repeated squaring; exponent >= 0.
RadialSeries pow(const RadialSeries& f, unsigned exponent);
RadialSeries derivative(const RadialSeries& f);
/// Image of dd-bar on a radial function: sum_{n>=1} n^2 f_n t^(n-1).
RadialSeries del_delbar_radial(const RadialSeries& f);
/// Horner evaluation of the truncated polynomial.
double evaluate(const RadialSeries& f, double t);

class BiSeries {
 public:
  BiSeries() : BiSeries(0) {}
  explicit BiSeries(int order);

  static BiSeries constant(const Rational& c, int order);
  static BiSeries monomial(int i, int j, const Rational& c, int order);

  int order() const { return order_; }
  /// Coefficient of u^i v^j, zero when i + j exceeds the order.
  Rational coeff(int i, int j) const;
  Rational& at(int i, int j);
  void set(int i, int j, const Rational& c) { at(i, j) = c; }

  BiSeries truncated(int order) const;
  /// Truncates or zero-pads to exactly `order`.
  BiSeries resized(int order) const;
  bool is_zero() const;
  bool is_radial() const;
  /// Coefficientwise (i, j) -> (j, i) swap; conjugation for real coefficients.
  BiSeries conj() const;
  BiSeries d_u() const;
  BiSeries d_v() const;

  BiSeries& operator+=(const BiSeries& g);
  BiSeries& operator-=(const BiSeries& g);
  BiSeries& operator*=(const Rational& c);

  friend BiSeries operator+(BiSeries f, const BiSeries& g) { return f += g; }
  friend BiSeries operator-(BiSeries f, const BiSeries& g) { return f -= g; }
  friend BiSeries operator*(BiSeries f, const Rational& c) { return f *= c; }
  friend BiSeries operator*(const Rational& c, BiSeries f) { return f *= c; }
  friend BiSeries operator-(BiSeries f) { return f *= Rational(-1); }
  friend BiSeries operator*(const BiSeries& f, const BiSeries& g);

  friend bool operator==(const BiSeries& f, const BiSeries& g) = default;

  struct Term {
    int i;
    int j;
    const Rational* c;
  };
  std::vector<Term> nonzero_terms() const;

 private:
  static std::size_t index(int i, int j) {
    const auto d = static_cast<std::size_t>(i + j);
    return d * (d + 1) / 2 + static_cast<std::size_t>(j);
  }

  int order_;
  std::vector<Rational> coeffs_;
};

enum class Wirtinger { d_u, d_v };

BiSeries wirtinger(const BiSeries& f, Wirtinger which);
bool agree(const BiSeries& f, const BiSeries& g);
BiSeries reciprocal(const BiSeries& f);

/// f(t) -> f(uv); the bivariate order is 2 * f.order().
BiSeries radial_lift(const RadialSeries& f);
/// Inverse of radial_lift.  Throws NotRadial on any off-diagonal coefficient.
RadialSeries radial_restrict(const BiSeries& g);

std::complex<double> evaluate(const BiSeries& f, std::complex<double> u, std::complex<double> v);
/// Evaluates at u = w, v = conj(w).
std::complex<double> evaluate_at(const BiSeries& f, std::complex<double> w);

}  // namespace cdcurv
