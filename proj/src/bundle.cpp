#include "cdcurv/bundle.hpp"

#include <algorithm>

#include "cdcurv/error.hpp"
#include "cdcurv/kernel.hpp"

namespace cdcurv {

namespace {

RadialSeries metric_field(const Json& j, const char* key, int order) {
  if (!j.contains(key)) throw Error(ErrorCode::MalformedSpec, std::string("missing field '") + key + "'");
  const Json& f = j.at(key);
  if (f.is_array()) {
    auto coeffs = rationals_from_json(f);
    if (coeffs.empty()) throw Error(ErrorCode::MalformedSpec, std::string("empty series for '") + key + "'");
    return RadialSeries::from_coeffs(coeffs, order);
  }
  return metric_series(kernel_spec_from_json(f), order);
}

std::optional<RadialSeries> optional_metric(const Json& j, const char* key, int order) {
  if (!j.contains(key)) return std::nullopt;
  return metric_field(j, key, order);
}

}  // namespace

FrameSpecFB2 frame_fb2_from_json(const Json& j, int order) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedSpec, "frame spec must be an object");
  FrameSpecFB2 spec{metric_field(j, "h0", order), metric_field(j, "h1", order), std::nullopt, std::nullopt,
                    std::nullopt};
  if (sgn(spec.h0[0]) <= 0 || sgn(spec.h1[0]) < 0)
    throw Error(ErrorCode::MalformedSpec, "frame metrics need h0(0) > 0 and h1(0) >= 0");
  if (j.contains("a")) spec.a = rational_from_json(j.at("a"));
  spec.ratio = optional_metric(j, "ratio", order);
  spec.cross = optional_metric(j, "cross", order);
  if (spec.a) {
    if (!spec.ratio && sgn(spec.h1[0]) > 0) spec.ratio = (*spec.a * *spec.a) * (spec.h0 * reciprocal(spec.h1));
    if (!spec.cross) spec.cross = RadialSeries::constant(*spec.a, order);
  }
  return spec;
}

FrameSpecFB3 frame_fb3_from_json(const Json& j, int order) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedSpec, "frame spec must be an object");
  if (!j.contains("k")) throw Error(ErrorCode::MalformedSpec, "FB3 frames need an explicit frame constant 'k'");
  FrameSpecFB3 spec{metric_field(j, "h0", order), metric_field(j, "h1", order), metric_field(j, "h2", order),
                    rational_from_json(j.at("k"))};
  if (sgn(spec.h0[0]) <= 0) throw Error(ErrorCode::MalformedSpec, "frame metrics need h0(0) > 0");
  return spec;
}

GramSeriesMatrix gram_fb2(const FrameSpecFB2& spec) {
  const BiSeries h0 = radial_lift(spec.h0);
  const BiSeries h1 = radial_lift(spec.h1);
  const BiSeries du = h0.d_u();
  const BiSeries dv = h0.d_v();
  const BiSeries duv = du.d_v();
  const int order = duv.order();

  GramSeriesMatrix g(2);
  g(0, 0) = h0.truncated(order);
  g(0, 1) = du.truncated(order);
  g(1, 0) = dv.truncated(order);
  g(1, 1) = duv + h1;
  return g;
}

GramSeriesMatrix gram_fb3(const FrameSpecFB3& spec) {
  const BiSeries h0 = radial_lift(spec.h0);
  const BiSeries h1 = radial_lift(spec.h1);
  const BiSeries h2 = radial_lift(spec.h2);
  const Rational& k = spec.k;

  const BiSeries h0_u = h0.d_u();
  const BiSeries h0_uu = h0_u.d_u();
  const BiSeries h0_v = h0.d_v();
  const BiSeries h0_vv = h0_v.d_v();
  const BiSeries h0_uv = h0_u.d_v();
  const BiSeries h0_uuv = h0_uu.d_v();
  const BiSeries h0_uvv = h0_uv.d_v();
  const BiSeries h0_uuvv = h0_uuv.d_v();
  const BiSeries h1_u = h1.d_u();
  const BiSeries h1_v = h1.d_v();
  const BiSeries h1_uv = h1_u.d_v();
  const int order = h0_uuvv.order();

  GramSeriesMatrix g(3);
  g(0, 0) = h0.truncated(order);
  g(0, 1) = h0_u.truncated(order);
  g(0, 2) = h0_uu.truncated(order);
  g(1, 0) = h0_v.truncated(order);
  g(1, 1) = (h0_uv + h1).truncated(order);
  g(1, 2) = (h0_uuv + k * h1_u).truncated(order);
  g(2, 0) = h0_vv.truncated(order);
  g(2, 1) = (h0_uvv + k * h1_v).truncated(order);
  g(2, 2) = h0_uuvv + (k * k) * h1_uv + h2;
  return g;
}

CurvatureMatrix curvature_matrix(const GramSeriesMatrix& h) {
  const SeriesMatrix hinv = inverse(h);
  return Rational(-1) * (hinv * h.d_u()).d_v();
}

CurvatureMatrix covariant_derivative(const GramSeriesMatrix& h, const CurvatureMatrix& k, Direction dir) {
  if (h.size() != k.size()) throw Error(ErrorCode::IndexMismatch, "Gram and curvature shapes differ");
  if (dir == Direction::wbar) return k.d_v();
  const SeriesMatrix connection = inverse(h) * h.d_u();
  const SeriesMatrix dk = k.d_u();
  const int order = std::min(dk.order(), connection.order());
  return dk.truncated(order) + (connection * k - k * connection).truncated(order);
}

DetTraceReport det_trace_report(const GramSeriesMatrix& h) {
  const BiSeries det = determinant(h);
  if (!det.is_radial()) throw Error(ErrorCode::NotRadialDeterminant, "det h is not a function of |w|^2");
  DetTraceReport r;
  r.det = radial_restrict(det);
  r.det_curv = line_curvature(r.det);
  r.trace_curv = radial_restrict(trace(curvature_matrix(h)));
  r.equal = agree(r.trace_curv, r.det_curv);
  return r;
}

BiSeries det_bundle_curvature(const GramSeriesMatrix& h) {
  const BiSeries det = determinant(h);
  if (sgn(det.coeff(0, 0)) == 0) throw Error(ErrorCode::SingularConstantTerm, "det h vanishes at the origin");
  return -(det.d_u() * reciprocal(det)).d_v();
}

bool trace_matches_det_curvature(const GramSeriesMatrix& h) {
  return agree(trace(curvature_matrix(h)), det_bundle_curvature(h));
}

RadialSeries second_fundamental_form_sq(const FrameSpecFB2& spec, const RadialSeries& ratio) {
  if (sgn(ratio[0]) == 0) throw Error(ErrorCode::ZeroDenominator, "ratio has zero constant term");
  const RadialSeries k0 = line_curvature(spec.h0);
  const RadialSeries denom = reciprocal(ratio) - k0;
  if (sgn(denom[0]) == 0) throw Error(ErrorCode::ZeroDenominator, "1/ratio - K0 vanishes at the origin");
  return (k0 * k0) * reciprocal(denom);
}

AdditivityReport trace_additivity_report(const FrameSpecFB2& spec, const RadialSeries& k1_metric) {
  AdditivityReport r;
  r.trace_curv = det_trace_report(gram_fb2(spec)).trace_curv;
  const RadialSeries k0 = line_curvature(spec.h0);
  r.line_sum = k0 + line_curvature(k1_metric);
  r.additive = agree(r.trace_curv, r.line_sum);

  const RadialSeries target = -(k0 * spec.h0);
  if (sgn(target[0]) != 0) {
    const Rational lambda = spec.h1[0] / target[0];
    if (sgn(lambda) > 0 && agree(spec.h1, lambda * target)) r.lambda = lambda;
  }
  return r;
}

MinorIdentityReport minor_det_identity_check(const RationalMatrix& a) {
  const int n = a.size();
  if (n < 3) throw Error(ErrorCode::OutOfRange, "the identity needs n >= 3");
  const int last = n - 1;
  const int prev = n - 2;
  MinorIdentityReport r;
  r.lhs = determinant(minor_matrix(a, last, last)) * determinant(minor_matrix(a, prev, prev)) -
          determinant(minor_matrix(a, prev, last)) * determinant(minor_matrix(a, last, prev));
  const RationalMatrix b = minor_matrix(minor_matrix(a, last, last), prev, prev);
  r.rhs = determinant(b) * determinant(a);
  r.holds = r.lhs == r.rhs;
  return r;
}

TensorReport tensor_curvature(const GramSeriesMatrix& h1, const std::vector<std::vector<Rational>>& e_polys) {
  const int order = h1.order();
  BiSeries g(order);
  for (const auto& e : e_polys) {
    BiSeries eu(order), ev(order);
    for (int d = 0; d < static_cast<int>(e.size()) && d <= order; ++d) {
      eu.at(d, 0) = e[static_cast<std::size_t>(d)];
      ev.at(0, d) = e[static_cast<std::size_t>(d)];
    }
    g += eu * ev;
  }
  if (sgn(g.coeff(0, 0)) == 0) throw Error(ErrorCode::ZeroSection, "sections all vanish at the origin");

  TensorReport r;
  r.line_curv = -(reciprocal(g) * g.d_u()).d_v();
  r.total = curvature_matrix(g * h1);
  const CurvatureMatrix k1 = curvature_matrix(h1);
  r.expected = k1 + r.line_curv * SeriesMatrix::identity(h1.size(), r.line_curv.order());
  r.additive = agree(r.total, r.expected);
  return r;
}

InvariantTriple unitary_invariant_triple(const FrameSpecFB2& spec, const RadialSeries& ratio,
                                         const RadialSeries& cross) {
  return {line_curvature(spec.h0), second_fundamental_form_sq(spec, ratio), cross};
}

}  // namespace cdcurv
