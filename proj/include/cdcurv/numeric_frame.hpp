#pragma once

// Double-precision holomorphic frames in a truncated coordinate space, used
// to cross-check the exact curvature against the projection P(w) onto the
// fibre: ||dP/dw||_HS^2 = -trace K(w).

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "cdcurv/fps.hpp"
#include "cdcurv/kernel.hpp"

namespace cdcurv {

struct NumericFrame {
  int dim = 0;   ///< truncation dimension M
  int rank = 0;  ///< number of frame columns
  std::function<Eigen::MatrixXcd(std::complex<double>)> frame;  ///< w -> M x rank
  RadialSeries trace_curvature;  ///< exact trace K as a series in |w|^2
};

inline constexpr int kDefaultFrameDim = 200;
inline constexpr double kDefaultStep = 1e-4;

/// Column sqrt(a_i) w^i, i < dim.  The kernel must carry dim coefficients.
NumericFrame numeric_frame_from_kernel(const DiagonalKernel& k, int dim = kDefaultFrameDim,
                                       int curvature_order = kDefaultOrder);

/// Rank-2 frame realizing the FB2 Gram matrix inside H0 + H1:
/// gamma_0 = (k0(., conj w), 0), gamma_1 = (d gamma_0, k1(., conj w)).
NumericFrame numeric_frame_fb2(const RadialSeries& h0, const RadialSeries& h1, int dim = kDefaultFrameDim,
                               int curvature_order = kDefaultOrder);

/// P(w) = alpha (alpha* alpha)^{-1} alpha*.  Throws IllConditionedFrame.
Eigen::MatrixXcd frame_projection(const NumericFrame& f, std::complex<double> w);

struct HsCheck {
  double hs_sq = 0;
  double neg_trace_curv = 0;
  double gap = 0;
};

/// Wirtinger derivative of P by central differences; |w| < 1.
HsCheck projection_hs_check(const NumericFrame& f, std::complex<double> w, double step = kDefaultStep);

}  // namespace cdcurv
