#pragma once

// Weighted backward shifts realizing M_z^* on a diagonal-kernel space,
// hypercontraction defects, homogeneity classification and the
// product-ratio asymptotics of intertwiners between power-kernel shifts.

#include <optional>
#include <string>
#include <vector>

#include "cdcurv/kernel.hpp"

namespace cdcurv {

/// A e_{n+1} = w_n e_n, A e_0 = 0, with s_n = w_n^2 stored exactly.
struct WeightedShift {
  std::vector<Rational> squared_weights;  ///< s_0 .. s_{dim-1}
  int dim = 0;
};

/// s_n = a_n / a_{n+1}.  Throws NonpositiveCoefficient, InsufficientOrder.
WeightedShift shift_from_kernel(const DiagonalKernel& k, int dim);

/// a_0 = 1, a_{n+1} = a_n / s_n.  Order dim.
DiagonalKernel kernel_from_shift(const WeightedShift& s);

struct DefectReport {
  std::vector<Rational> diag;  ///< entries n = 0 .. dim - m
  bool nonneg = true;
  int first_negative = -1;
};

/// Diagonal of sum_k (-1)^k C(m, k) A*^k A^k.  m >= 1.
DefectReport hypercontraction_defect(const WeightedShift& s, int m);

/// True when defects of every order 1..m are nonnegative.
bool is_hypercontraction(const WeightedShift& s, int m);

/// Integer alpha >= 1 with a_i = C(i + alpha - 1, i) through the order.
std::optional<int> power_exponent(const DiagonalKernel& k);

struct HomogeneityVerdict {
  bool homogeneous = false;
  std::optional<int> alpha;
  std::string reason;
};

HomogeneityVerdict homogeneity_check(const DiagonalKernel& h0, const DiagonalKernel& h1, const Rational& a);

struct RigiditySample {
  long m = 0;
  double ratio = 0;      ///< m * prod_{k1} / prod_{k0}
  double log_ratio = 0;
};

struct RigidityReport {
  Rational exponent;  ///< 1 + (k0 - k1) / 2
  std::vector<RigiditySample> samples;
  double fitted_slope = 0;  ///< log-log slope over the last decade
};

/// Samples at m = 10, 100, ..., up to m_max (>= 100).  k0, k1 >= 1.
RigidityReport rigidity_exponent(int k0, int k1, long m_max);

}  // namespace cdcurv
