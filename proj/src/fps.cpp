#include "cdcurv/fps.hpp"

#include <algorithm>
#include <cassert>

#include "cdcurv/error.hpp"

namespace cdcurv {

// ---------------------------------------------------------------- radial

RadialSeries::RadialSeries(int order) : coeffs_(static_cast<std::size_t>(std::max(order, 0)) + 1) {}

RadialSeries::RadialSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

RadialSeries RadialSeries::constant(const Rational& c, int order) {
  RadialSeries f(order);
  f[0] = c;
  return f;
}

RadialSeries RadialSeries::monomial(int degree, const Rational& c, int order) {
  RadialSeries f(order);
  if (degree <= order) f[degree] = c;
  return f;
}

RadialSeries RadialSeries::from_coeffs(std::span<const Rational> coeffs, int order) {
  RadialSeries f(order);
  for (int n = 0; n <= order && n < static_cast<int>(coeffs.size()); ++n) f[n] = coeffs[n];
  return f;
}

RadialSeries RadialSeries::truncated(int order) const {
  return from_coeffs(coeffs_, std::min(order, this->order()));
}

bool RadialSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

RadialSeries& RadialSeries::operator+=(const RadialSeries& g) {
  coeffs_.resize(static_cast<std::size_t>(std::min(order(), g.order())) + 1);
  for (int n = 0; n <= order(); ++n) (*this)[n] += g[n];
  return *this;
}

RadialSeries& RadialSeries::operator-=(const RadialSeries& g) {
  coeffs_.resize(static_cast<std::size_t>(std::min(order(), g.order())) + 1);
  for (int n = 0; n <= order(); ++n) (*this)[n] -= g[n];
  return *this;
}

RadialSeries& RadialSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

RadialSeries operator*(const RadialSeries& f, const RadialSeries& g) {
  const int order = std::min(f.order(), g.order());
  RadialSeries h(order);
  for (int i = 0; i <= order; ++i) {
    if (sgn(f[i]) == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (sgn(g[j]) == 0) continue;
      h[i + j] += f[i] * g[j];
    }
  }
  return h;
}

int first_mismatch(const RadialSeries& f, const RadialSeries& g) {
  const int order = std::min(f.order(), g.order());
  for (int n = 0; n <= order; ++n)
    if (f[n] != g[n]) return n;
  return -1;
}

bool agree(const RadialSeries& f, const RadialSeries& g) { return first_mismatch(f, g) < 0; }

RadialSeries reciprocal(const RadialSeries& f) {
  if (sgn(f[0]) == 0) throw Error(ErrorCode::ZeroConstantTerm, "reciprocal of a series with f(0) = 0");
  const int order = f.order();
  const Rational inv0 = 1 / f[0];
  RadialSeries g(order);
  g[0] = inv0;
  for (int n = 1; n <= order; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k)
      if (sgn(f[k]) != 0) s += f[k] * g[n - k];
    g[n] = -s * inv0;
  }
  return g;
}

RadialSeries log(const RadialSeries& f) {
  if (f[0] != 1) throw Error(ErrorCode::ConstantTermNotOne, "log needs constant term 1, got " + to_string(f[0]));
  const int order = f.order();
  RadialSeries l(order);
  for (int n = 1; n <= order; ++n) {
    Rational s = Rational(n) * f[n];
    for (int k = 1; k < n; ++k)
      if (sgn(f[n - k]) != 0) s -= Rational(k) * l[k] * f[n - k];
    l[n] = s / n;
  }
  return l;
}

RadialSeries exp(const RadialSeries& f) {
  if (sgn(f[0]) != 0)
    throw Error(ErrorCode::IrrationalScale, "exp needs constant term 0, got " + to_string(f[0]));
  const int order = f.order();
  RadialSeries e(order);
  e[0] = 1;
  for (int n = 1; n <= order; ++n) {
    Rational s = 0;
    for (int k = 1; k <= n; ++k)
      if (sgn(f[k]) != 0) s += Rational(k) * f[k] * e[n - k];
    e[n] = s / n;
  }
  return e;
}

RadialSeries exp_pow(const RadialSeries& f, const Rational& r) {
  const Rational c = f[0];
  if (sgn(c) == 0 && is_integer(r) && sgn(r) >= 0 && r.get_num().fits_uint_p())
    return pow(f, static_cast<unsigned>(r.get_num().get_ui()));
  if (sgn(c) <= 0)
    throw Error(ErrorCode::ConstantTermNotOne, "f^r needs a positive constant term, got " + to_string(c));
  if (c == 1) return exp(r * log(f));
  auto scale = rational_power(c, r);
  if (!scale)
    throw Error(ErrorCode::IrrationalScale, to_string(c) + "^" + to_string(r) + " is irrational");
  RadialSeries unit = f;
  unit *= 1 / c;
  return *scale * exp(r * log(unit));
}

RadialSeries pow(const RadialSeries& f, unsigned exponent) {
  RadialSeries result = RadialSeries::constant(1, f.order());
  RadialSeries base = f;
  while (exponent != 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

RadialSeries derivative(const RadialSeries& f) {
  RadialSeries g(std::max(f.order() - 1, 0));
  for (int n = 1; n <= f.order(); ++n) g[n - 1] = Rational(n) * f[n];
  return g;
}

RadialSeries del_delbar_radial(const RadialSeries& f) {
  RadialSeries g(std::max(f.order() - 1, 0));
  for (int n = 1; n <= f.order(); ++n) g[n - 1] = Rational(n * n) * f[n];
  return g;
}

double evaluate(const RadialSeries& f, double t) {
  double acc = 0.0;
  for (int n = f.order(); n >= 0; --n) acc = acc * t + f[n].get_d();
  return acc;
}

// ------------------------------------------------------------- bivariate

BiSeries::BiSeries(int order)
    : order_(std::max(order, 0)), coeffs_(index(0, order_ + 1)) {}

BiSeries BiSeries::constant(const Rational& c, int order) {
  BiSeries f(order);
  f.at(0, 0) = c;
  return f;
}

BiSeries BiSeries::monomial(int i, int j, const Rational& c, int order) {
  BiSeries f(order);
  if (i + j <= order) f.at(i, j) = c;
  return f;
}

Rational BiSeries::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0;
  return coeffs_[index(i, j)];
}

Rational& BiSeries::at(int i, int j) {
  if (i < 0 || j < 0 || i + j > order_)
    throw Error(ErrorCode::OutOfRange, "coefficient outside the truncation order");
  return coeffs_[index(i, j)];
}

BiSeries BiSeries::truncated(int order) const {
  BiSeries g(std::min(order, order_));
  for (int d = 0; d <= g.order_; ++d)
    for (int j = 0; j <= d; ++j) g.coeffs_[index(d - j, j)] = coeffs_[index(d - j, j)];
  return g;
}

BiSeries BiSeries::resized(int order) const {
  BiSeries g(order);
  const int common = std::min(order, order_);
  for (int d = 0; d <= common; ++d)
    for (int j = 0; j <= d; ++j) g.coeffs_[index(d - j, j)] = coeffs_[index(d - j, j)];
  return g;
}

bool BiSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool BiSeries::is_radial() const {
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j)
      if (d - j != j && sgn(coeffs_[index(d - j, j)]) != 0) return false;
  return true;
}

BiSeries BiSeries::conj() const {
  BiSeries g(order_);
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j) g.coeffs_[index(j, d - j)] = coeffs_[index(d - j, j)];
  return g;
}

BiSeries BiSeries::d_u() const {
  BiSeries g(order_ - 1);
  if (order_ == 0) return g;
  for (int d = 0; d <= g.order_; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      g.coeffs_[index(i, j)] = Rational(i + 1) * coeffs_[index(i + 1, j)];
    }
  return g;
}

BiSeries BiSeries::d_v() const {
  BiSeries g(order_ - 1);
  if (order_ == 0) return g;
  for (int d = 0; d <= g.order_; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      g.coeffs_[index(i, j)] = Rational(j + 1) * coeffs_[index(i, j + 1)];
    }
  return g;
}

BiSeries& BiSeries::operator+=(const BiSeries& g) {
  if (g.order_ < order_) *this = truncated(g.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += g.coeffs_[k];
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& g) {
  if (g.order_ < order_) *this = truncated(g.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= g.coeffs_[k];
  return *this;
}

BiSeries& BiSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

std::vector<BiSeries::Term> BiSeries::nonzero_terms() const {
  std::vector<Term> terms;
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j) {
      const auto& c = coeffs_[index(d - j, j)];
      if (sgn(c) != 0) terms.push_back({d - j, j, &c});
    }
  return terms;
}

namespace {

// Numerators over the lcm of the denominators.
struct ScaledTerms {
  std::vector<BiSeries::Term> terms;
  std::vector<Integer> num;
  Integer den = 1;
};

ScaledTerms scaled_terms(const BiSeries& f) {
  ScaledTerms s;
  s.terms = f.nonzero_terms();
  for (const auto& t : s.terms) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), t.c->get_den_mpz_t());
  s.num.resize(s.terms.size());
  for (std::size_t k = 0; k < s.terms.size(); ++k) {
    mpz_divexact(s.num[k].get_mpz_t(), s.den.get_mpz_t(), s.terms[k].c->get_den_mpz_t());
    s.num[k] *= s.terms[k].c->get_num();
  }
  return s;
}

}  // namespace

BiSeries operator*(const BiSeries& f, const BiSeries& g) {
  const int order = std::min(f.order(), g.order());
  const ScaledTerms fs = scaled_terms(f);
  const ScaledTerms gs = scaled_terms(g);
  const auto width = static_cast<std::size_t>(order + 1);
  std::vector<Integer> acc(width * width);
  std::vector<char> touched(width * width, 0);
  // Terms are sorted by total degree, so the inner loop can stop early.
  for (std::size_t x = 0; x < fs.terms.size(); ++x) {
    const auto& a = fs.terms[x];
    const int room = order - (a.i + a.j);
    if (room < 0) break;
    for (std::size_t y = 0; y < gs.terms.size(); ++y) {
      const auto& b = gs.terms[y];
      if (b.i + b.j > room) break;
      const auto slot = static_cast<std::size_t>(a.i + b.i) * width + static_cast<std::size_t>(a.j + b.j);
      mpz_addmul(acc[slot].get_mpz_t(), fs.num[x].get_mpz_t(), gs.num[y].get_mpz_t());
      touched[slot] = 1;
    }
  }
  BiSeries h(order);
  const Integer den = fs.den * gs.den;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) {
      const auto slot = static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j);
      if (!touched[slot] || sgn(acc[slot]) == 0) continue;
      Rational& c = h.at(i, j);
      mpq_set_num(c.get_mpq_t(), acc[slot].get_mpz_t());
      mpq_set_den(c.get_mpq_t(), den.get_mpz_t());
      c.canonicalize();
    }
  return h;
}

BiSeries wirtinger(const BiSeries& f, Wirtinger which) {
  return which == Wirtinger::d_u ? f.d_u() : f.d_v();
}

bool agree(const BiSeries& f, const BiSeries& g) {
  const int order = std::min(f.order(), g.order());
  for (int d = 0; d <= order; ++d)
    for (int j = 0; j <= d; ++j)
      if (f.coeff(d - j, j) != g.coeff(d - j, j)) return false;
  return true;
}

BiSeries reciprocal(const BiSeries& f) {
  const Rational f00 = f.coeff(0, 0);
  if (sgn(f00) == 0) throw Error(ErrorCode::ZeroConstantTerm, "reciprocal of a bivariate series with f(0,0) = 0");
  const Rational inv0 = 1 / f00;
  const int order = f.order();
  BiSeries g(order);
  g.at(0, 0) = inv0;
  auto terms = f.nonzero_terms();
  Rational s, prod;
  for (int d = 1; d <= order; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      s = 0;
      for (const auto& t : terms) {
        if (t.i + t.j == 0) continue;
        if (t.i + t.j > d) break;
        if (t.i > i || t.j > j) continue;
        const Rational& x = g.at(i - t.i, j - t.j);
        if (sgn(x) == 0) continue;
        mpq_mul(prod.get_mpq_t(), t.c->get_mpq_t(), x.get_mpq_t());
        mpq_add(s.get_mpq_t(), s.get_mpq_t(), prod.get_mpq_t());
      }
      g.at(i, j) = -s * inv0;
    }
  return g;
}

BiSeries radial_lift(const RadialSeries& f) {
  BiSeries g(2 * f.order());
  for (int n = 0; n <= f.order(); ++n) g.at(n, n) = f[n];
  return g;
}

RadialSeries radial_restrict(const BiSeries& g) {
  if (!g.is_radial()) throw Error(ErrorCode::NotRadial, "series has off-diagonal terms");
  RadialSeries f(g.order() / 2);
  for (int n = 0; n <= f.order(); ++n) f[n] = g.coeff(n, n);
  return f;
}

std::complex<double> evaluate(const BiSeries& f, std::complex<double> u, std::complex<double> v) {
  const int order = f.order();
  std::vector<std::complex<double>> up(static_cast<std::size_t>(order) + 1), vp(up.size());
  up[0] = vp[0] = 1.0;
  for (std::size_t k = 1; k < up.size(); ++k) {
    up[k] = up[k - 1] * u;
    vp[k] = vp[k - 1] * v;
  }
  std::complex<double> acc = 0.0;
  for (const auto& t : f.nonzero_terms())
    acc += t.c->get_d() * up[static_cast<std::size_t>(t.i)] * vp[static_cast<std::size_t>(t.j)];
  return acc;
}

std::complex<double> evaluate_at(const BiSeries& f, std::complex<double> w) {
  return evaluate(f, w, std::conj(w));
}

}  // namespace cdcurv
