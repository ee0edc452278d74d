#pragma once

// Frame Gram matrices, matrix curvature and its covariant derivatives,
// determinant/trace identities and second fundamental forms for the
// eigenvector bundles of upper-triangular Cowen-Douglas operators.

#include <optional>
#include <vector>

#include "cdcurv/fps.hpp"
#include "cdcurv/json_io.hpp"
#include "cdcurv/matrix.hpp"

namespace cdcurv {

/// Gram matrix h_{ij} = <gamma_j, gamma_i> of a holomorphic frame: column
/// index carries the holomorphic variable u, row index the conjugate v.
using GramSeriesMatrix = SeriesMatrix;
using CurvatureMatrix = SeriesMatrix;

/// Two-step frame gamma_0, gamma_1 with gamma_0 orthogonal to
/// d gamma_0 - gamma_1.  h0 = |gamma_0|^2, h1 = |d gamma_0 - gamma_1|^2.
struct FrameSpecFB2 {
  RadialSeries h0;
  RadialSeries h1;
  std::optional<Rational> a;           ///< S t_1 = a t_0
  std::optional<RadialSeries> ratio;   ///< |S t_1|^2 / |t_1|^2
  std::optional<RadialSeries> cross;   ///< <S t_1, t_0> / |t_0|^2
};

struct FrameSpecFB3 {
  RadialSeries h0;
  RadialSeries h1;
  RadialSeries h2;
  Rational k;  ///< frame constant, no default
};

/// Metric fields accept kernel specs (see kernel.hpp) or raw coefficient
/// arrays.  `order` is the radial order the metrics are built to.
FrameSpecFB2 frame_fb2_from_json(const Json& j, int order);
FrameSpecFB3 frame_fb3_from_json(const Json& j, int order);

/// [[h0, d h0], [dbar h0, dbar d h0 + h1]].
GramSeriesMatrix gram_fb2(const FrameSpecFB2& spec);
GramSeriesMatrix gram_fb3(const FrameSpecFB3& spec);

/// -dbar(h^{-1} d h).  Throws SingularConstantTerm.
CurvatureMatrix curvature_matrix(const GramSeriesMatrix& h);

enum class Direction { w, wbar };

/// K_w = d K + [h^{-1} d h, K];  K_wbar = dbar K.
CurvatureMatrix covariant_derivative(const GramSeriesMatrix& h, const CurvatureMatrix& k, Direction dir);

struct DetTraceReport {
  RadialSeries det;
  RadialSeries trace_curv;  ///< radial restriction of trace K
  RadialSeries det_curv;    ///< -dd-bar log det h
  bool equal = false;
};

/// Throws NotRadialDeterminant when det h has off-diagonal terms.
DetTraceReport det_trace_report(const GramSeriesMatrix& h);

/// -dbar(d det h / det h), valid for any Gram matrix.
BiSeries det_bundle_curvature(const GramSeriesMatrix& h);

/// trace K == det_bundle_curvature(h) through the shared order.
bool trace_matches_det_curvature(const GramSeriesMatrix& h);

/// theta^2 = K0^2 / (1/ratio - K0) with K0 the curvature of h0.
RadialSeries second_fundamental_form_sq(const FrameSpecFB2& spec, const RadialSeries& ratio);

struct AdditivityReport {
  bool additive = false;
  std::optional<Rational> lambda;  ///< h1 = lambda * (-K0 h0) when proportional
  RadialSeries trace_curv;
  RadialSeries line_sum;           ///< K0 + K1
};

/// Compares trace K against K0 + K1, with K1 the line curvature of k1_metric,
/// and independently tests h1 = lambda (-K0 h0).
AdditivityReport trace_additivity_report(const FrameSpecFB2& spec, const RadialSeries& k1_metric);

struct MinorIdentityReport {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// det A_{n,n} det A_{n-1,n-1} - det A_{n-1,n} det A_{n,n-1} = det B det A,
/// where A_{i,j} drops row i and column j and B drops the last two rows and
/// columns.  n >= 3.
MinorIdentityReport minor_det_identity_check(const RationalMatrix& a);

struct TensorReport {
  CurvatureMatrix total;     ///< curvature of h1 * g
  CurvatureMatrix expected;  ///< K(h1) + K(g) I
  BiSeries line_curv;        ///< K(g)
  bool additive = false;
};

/// g(u, v) = sum_i e_i(u) e_i(v) for polynomial sections e_i (coefficient
/// lists in w).  Throws ZeroSection when g(0, 0) = 0.
TensorReport tensor_curvature(const GramSeriesMatrix& h1, const std::vector<std::vector<Rational>>& e_polys);

struct InvariantTriple {
  RadialSeries curvature;  ///< K_{T_0}
  RadialSeries theta_sq;
  RadialSeries cross;
};

InvariantTriple unitary_invariant_triple(const FrameSpecFB2& spec, const RadialSeries& ratio,
                                         const RadialSeries& cross);

}  // namespace cdcurv
