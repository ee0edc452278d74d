#include "cdcurv/matrix.hpp"

#include <algorithm>
#include <climits>

#include "cdcurv/error.hpp"

namespace cdcurv {

RationalMatrix identity_rational(int n) {
  RationalMatrix m(n, Rational(0));
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Rational determinant(const RationalMatrix& a) {
  const int n = a.size();
  if (n == 0) return 1;
  RationalMatrix m = a;
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const Rational inv = 1 / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (sgn(m(r, col)) == 0) continue;
      const Rational f = m(r, col) * inv;
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& a) {
  const int n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv = identity_rational(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::SingularConstantTerm, "matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Rational p = 1 / m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) *= p;
      inv(col, j) *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m(r, col)) == 0) continue;
      const Rational f = m(r, col);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

RationalMatrix minor_matrix(const RationalMatrix& a, int r, int c) {
  const int n = a.size();
  RationalMatrix out(n - 1);
  for (int i = 0, oi = 0; i < n; ++i) {
    if (i == r) continue;
    for (int j = 0, oj = 0; j < n; ++j) {
      if (j == c) continue;
      out(oi, oj++) = a(i, j);
    }
    ++oi;
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  const int n = a.size();
  RationalMatrix out(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

// ---------------------------------------------------------------- series

SeriesMatrix SeriesMatrix::identity(int n, int order) {
  SeriesMatrix m(n, BiSeries(order));
  for (int i = 0; i < n; ++i) m(i, i) = BiSeries::constant(1, order);
  return m;
}

SeriesMatrix SeriesMatrix::from_constant(const RationalMatrix& c, int order) {
  SeriesMatrix m(c.size(), BiSeries(order));
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j) m(i, j) = BiSeries::constant(c(i, j), order);
  return m;
}

int SeriesMatrix::order() const {
  int order = INT_MAX;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) order = std::min(order, (*this)(i, j).order());
  return size() == 0 ? 0 : order;
}

RationalMatrix SeriesMatrix::constant_term() const {
  RationalMatrix c(size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) c(i, j) = (*this)(i, j).coeff(0, 0);
  return c;
}

namespace {

template <class F>
SeriesMatrix map_entries(const SeriesMatrix& a, F&& f) {
  SeriesMatrix out(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out(i, j) = f(a(i, j));
  return out;
}

}  // namespace

SeriesMatrix SeriesMatrix::truncated(int order) const {
  return map_entries(*this, [order](const BiSeries& s) { return s.truncated(order); });
}

SeriesMatrix SeriesMatrix::d_u() const {
  return map_entries(*this, [](const BiSeries& s) { return s.d_u(); });
}

SeriesMatrix SeriesMatrix::d_v() const {
  return map_entries(*this, [](const BiSeries& s) { return s.d_v(); });
}

SeriesMatrix SeriesMatrix::conj_transpose() const {
  SeriesMatrix out(size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) out(i, j) = (*this)(j, i).conj();
  return out;
}

bool SeriesMatrix::is_hermitian() const { return agree(*this, conj_transpose()); }

bool SeriesMatrix::is_zero() const {
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (!(*this)(i, j).is_zero()) return false;
  return true;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesMatrix out(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesMatrix out(a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  const int n = a.size();
  const int order = std::min(a.order(), b.order());
  SeriesMatrix out(n, BiSeries(order));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

SeriesMatrix operator*(const BiSeries& s, const SeriesMatrix& a) {
  return map_entries(a, [&s](const BiSeries& x) { return s * x; });
}

SeriesMatrix operator*(const Rational& c, const SeriesMatrix& a) {
  return map_entries(a, [&c](const BiSeries& x) { return c * x; });
}

BiSeries trace(const SeriesMatrix& a) {
  BiSeries t(a.order());
  for (int i = 0; i < a.size(); ++i) t += a(i, i);
  return t;
}

namespace {

BiSeries laplace(const SeriesMatrix& a, std::vector<int>& cols, int row) {
  const int n = a.size();
  if (row == n) return BiSeries::constant(1, a.order());
  BiSeries acc(a.order());
  int sign_index = 0;
  for (int c = 0; c < n; ++c) {
    if (std::find(cols.begin(), cols.end(), c) != cols.end()) continue;
    const bool negative = (sign_index++ % 2) == 1;
    if (a(row, c).is_zero()) continue;
    cols.push_back(c);
    BiSeries term = a(row, c) * laplace(a, cols, row + 1);
    cols.pop_back();
    if (negative) acc -= term;
    else acc += term;
  }
  return acc;
}

}  // namespace

BiSeries determinant(const SeriesMatrix& a) {
  std::vector<int> cols;
  return laplace(a, cols, 0);
}

SeriesMatrix inverse(const SeriesMatrix& a) {
  const int n = a.size();
  const int order = a.order();
  RationalMatrix c0 = a.constant_term();
  if (sgn(determinant(c0)) == 0)
    throw Error(ErrorCode::SingularConstantTerm, "constant-term matrix is singular");
  SeriesMatrix x = SeriesMatrix::from_constant(inverse(c0), 0);
  // x is exact through total degree `correct`; each step doubles that.
  int correct = 0;
  while (correct < order) {
    const int next = std::min(order, 2 * correct + 1);
    SeriesMatrix xs(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) xs(i, j) = x(i, j).resized(next);
    SeriesMatrix ax = a.truncated(next) * xs;
    SeriesMatrix residual = SeriesMatrix::identity(n, next) - ax;
    x = xs + xs * residual;
    correct = next;
  }
  return x;
}

bool agree(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (!agree(a(i, j), b(i, j))) return false;
  return true;
}

}  // namespace cdcurv
