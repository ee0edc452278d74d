#pragma once

#include <cstddef>
#include <vector>

#include "cdcurv/fps.hpp"
#include "cdcurv/rational.hpp"

namespace cdcurv {

/// Dense square matrix over an element type, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, const T& fill = T()) : n_(n), data_(static_cast<std::size_t>(n * n), fill) {}

  int size() const { return n_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = SquareMatrix<Rational>;

RationalMatrix identity_rational(int n);
/// Exact determinant by fraction-free elimination with row pivoting.
Rational determinant(const RationalMatrix& a);
/// Throws SingularConstantTerm when a is singular.
RationalMatrix inverse(const RationalMatrix& a);
/// Drops row r and column c (0-based).
RationalMatrix minor_matrix(const RationalMatrix& a, int r, int c);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Matrix whose entries are bivariate series.  The effective order is the
/// smallest entry order.
class SeriesMatrix : public SquareMatrix<BiSeries> {
 public:
  using SquareMatrix<BiSeries>::SquareMatrix;
  SeriesMatrix(const SquareMatrix<BiSeries>& m) : SquareMatrix<BiSeries>(m) {}

  static SeriesMatrix identity(int n, int order);
  static SeriesMatrix from_constant(const RationalMatrix& c, int order);

  int order() const;
  RationalMatrix constant_term() const;
  SeriesMatrix truncated(int order) const;
  SeriesMatrix d_u() const;
  SeriesMatrix d_v() const;
  /// Entry (i, j) of the result is conj of entry (j, i).
  SeriesMatrix conj_transpose() const;
  bool is_hermitian() const;
  bool is_zero() const;
};

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const BiSeries& s, const SeriesMatrix& a);
SeriesMatrix operator*(const Rational& c, const SeriesMatrix& a);

BiSeries trace(const SeriesMatrix& a);
/// Laplace expansion; intended for the small ranks used here.
BiSeries determinant(const SeriesMatrix& a);
/// Newton iteration X <- X (2I - A X) starting from the inverse of the
/// constant term.  Throws SingularConstantTerm.
SeriesMatrix inverse(const SeriesMatrix& a);
/// Entrywise agreement through the shared order.
bool agree(const SeriesMatrix& a, const SeriesMatrix& b);

}  // namespace cdcurv
