#include "cdcurv/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "cdcurv/error.hpp"
#include "cdcurv/kernel.hpp"
#include "cdcurv/shift.hpp"

namespace cdcurv {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "CERTIFIED";
    case Verdict::not_certified: return "NOT_CERTIFIED";
    case Verdict::undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) g.push_back(i / 10.0);
  return g;
}

namespace {

Json flags_json(const SimilarityFlags& f) {
  Json j = Json::object();
  auto put = [&j](const char* key, const std::optional<bool>& v) {
    if (v) j[key] = *v;
  };
  put("hypercontraction_ok", f.hypercontraction_ok);
  if (f.hypercontraction_ok) j["hypercontraction_scope"] = "checked-at-realization";
  put("condition2_ok", f.condition2_ok);
  put("consistency_ok", f.consistency_ok);
  return j;
}

}  // namespace

Json to_json(const SimilarityReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["psi"] = series_to_json(r.psi);
  j["difference"] = series_to_json(r.difference);
  j["flags"] = flags_json(r.flags);
  j["grid"] = r.grid;
  j["diagnostics"] = {
      {"difference_on_grid", r.difference_on_grid},
      {"laplacian_on_grid", r.laplacian_on_grid},
      {"partial_sum", r.tail.partial_sum},
      {"signed_sum", r.tail.signed_sum},
      {"tail_ratio", r.tail.ratio},
      {"raabe", r.tail.raabe},
      {"summable", r.tail.summable},
      {"divergent", r.tail.divergent},
  };
  j["reason"] = r.reason;
  return j;
}

RadialSeries curvature_difference(const RadialSeries& hT, const RadialSeries& hS) {
  return line_curvature(hS) - line_curvature(hT);
}

RadialSeries radial_potential_solve(const RadialSeries& d) {
  RadialSeries psi(d.order() + 1);
  for (int n = 1; n <= psi.order(); ++n) psi[n] = d[n - 1] / (n * n);
  return psi;
}

TailDiagnostics tail_diagnostics(const RadialSeries& psi, double bound) {
  TailDiagnostics t;
  for (int n = 0; n <= psi.order(); ++n) {
    const double c = psi[n].get_d();
    t.partial_sum += std::abs(c);
    t.signed_sum += c;
  }
  const int last = psi.order();
  const int first = std::max(1, last - kTailLength + 1);
  t.tail_zero = true;
  t.tail_nonneg = true;
  for (int n = first; n <= last; ++n) {
    if (sgn(psi[n]) != 0) t.tail_zero = false;
    if (sgn(psi[n]) < 0) t.tail_nonneg = false;
  }

  // least-squares slope of log |c_n| against n over nonzero tail entries
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = first; n <= last; ++n) {
    if (sgn(psi[n]) == 0) continue;
    const double y = std::log(std::abs(psi[n].get_d()));
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
    ++count;
  }
  t.ratio = 0;
  if (count >= 2) t.ratio = std::exp((count * sxy - sx * sy) / (count * sxx - sx * sx));

  double raabe = 0;
  int pairs = 0;
  for (int n = first; n < last; ++n) {
    if (sgn(psi[n]) == 0 || sgn(psi[n + 1]) == 0) continue;
    const Rational q = abs(psi[n]) / abs(psi[n + 1]);
    raabe += n * (q.get_d() - 1);
    ++pairs;
  }
  t.raabe = pairs > 0 ? raabe / pairs : 0;

  t.summable = t.tail_zero || (pairs > 0 && t.raabe > 1.5);
  t.divergent = !t.tail_zero && t.tail_nonneg && (t.ratio >= 1 || (pairs > 0 && t.raabe <= 1.1));
  if (t.tail_nonneg && t.signed_sum > bound) t.divergent = true;
  return t;
}

SimilarityReport certificate(const RadialSeries& d, const std::vector<double>& grid, double bound) {
  SimilarityReport r;
  r.difference = d;
  r.grid = grid;
  bool any_pos = false, any_neg = false;
  for (double x : grid) {
    if (x < 0 || x >= 1) throw Error(ErrorCode::OutOfRange, "grid points must lie in [0, 1)");
    const double v = evaluate(d, x);
    r.difference_on_grid.push_back(v);
    any_pos = any_pos || v > 0;
    any_neg = any_neg || v < 0;
  }

  if (!any_pos) {
    r.psi = RadialSeries(d.order() + 1);
    r.laplacian_on_grid.assign(grid.size(), 0.0);
    r.tail = tail_diagnostics(r.psi, bound);
    r.verdict = Verdict::certified;
    r.reason = "difference is nonpositive on the grid; psi = 0";
    return r;
  }

  r.psi = radial_potential_solve(d);
  r.tail = tail_diagnostics(r.psi, bound);
  const RadialSeries lap = del_delbar_radial(r.psi);
  bool subharmonic = true;
  for (double x : grid) {
    const double v = evaluate(lap, x);
    r.laplacian_on_grid.push_back(v);
    subharmonic = subharmonic && v >= 0;
  }

  if (any_neg) {
    r.verdict = Verdict::undecided;
    r.reason = "difference changes sign on the grid";
    return r;
  }
  if (subharmonic && r.tail.summable && r.tail.partial_sum <= bound) {
    r.verdict = Verdict::certified;
    r.reason = "psi is subharmonic with summable coefficients within the bound";
  } else if (r.tail.tail_nonneg && (r.tail.divergent || r.tail.signed_sum > bound)) {
    r.verdict = Verdict::not_certified;
    r.reason = "psi has nonnegative coefficients with divergent partial sums";
  } else {
    r.verdict = Verdict::undecided;
    r.reason = "tail behaviour is inconclusive";
  }
  return r;
}

namespace {

// Exponent k with h = h(0) (1 - t)^(-k), k a positive integer.
int power_exponent_of(const RadialSeries& h, const char* what) {
  if (sgn(h[0]) <= 0) throw Error(ErrorCode::NotPowerKernel, std::string(what) + " has nonpositive constant term");
  RadialSeries unit = h;
  unit *= 1 / Rational(h[0]);
  const auto k = power_exponent(DiagonalKernel(unit));
  if (!k) throw Error(ErrorCode::NotPowerKernel, std::string(what) + " is not a power kernel");
  return *k;
}

bool hypercontractive_at_realization(const RadialSeries& h, int m, int dim) {
  RadialSeries unit = h;
  unit *= 1 / Rational(h[0]);
  const int n = std::min(dim, unit.order());
  if (n < m + 1) throw Error(ErrorCode::InsufficientOrder, "metric too short for the hypercontraction test");
  for (int i = 0; i <= n; ++i)
    if (sgn(unit[i]) <= 0) return false;
  return is_hypercontraction(shift_from_kernel(DiagonalKernel(unit.truncated(n)), n), m);
}

void downgrade_on_failed_preconditions(SimilarityReport& r) {
  const bool failed = (r.flags.hypercontraction_ok && !*r.flags.hypercontraction_ok) ||
                      (r.flags.condition2_ok && !*r.flags.condition2_ok);
  if (failed && r.verdict == Verdict::certified) {
    r.verdict = Verdict::undecided;
    r.reason = "potential found but a precondition fails";
  }
}

}  // namespace

SimilarityReport line_similarity_report(const RadialSeries& hT, const RadialSeries& hS, const SimilarityOptions& opts) {
  const int k = power_exponent_of(hS, "S metric");
  const int n = std::min(hT.order(), hS.order());
  if (n < opts.order + 1) throw Error(ErrorCode::InsufficientOrder, "metrics shorter than the requested order");
  const RadialSeries d = curvature_difference(hT.truncated(opts.order + 1), hS.truncated(opts.order + 1));
  SimilarityReport r = certificate(d, opts.grid, opts.bound);
  r.flags.hypercontraction_ok = hypercontractive_at_realization(hT, k, opts.dim);
  downgrade_on_failed_preconditions(r);
  return r;
}

ScalarData default_scalar_data(const FrameSpecFB2& T, const FrameSpecFB2& S) {
  const int order = std::min({T.h0.order(), T.h1.order(), S.h0.order(), S.h1.order()});
  auto ratio = [](const FrameSpecFB2& f) { return f.ratio ? *f.ratio : f.h0 * reciprocal(f.h1); };
  return {RadialSeries::constant(1, order), ratio(T), ratio(S)};
}

SimilarityReport fb2_similarity_report(const FrameSpecFB2& T, const FrameSpecFB2& S, const ScalarData& data,
                                       const SimilarityOptions& opts) {
  const int k0 = power_exponent_of(S.h0, "S h0");
  const int k1 = power_exponent_of(S.h1, "S h1");
  const int top = opts.order + 1;
  auto cut = [top](const RadialSeries& h) {
    if (h.order() < top) throw Error(ErrorCode::InsufficientOrder, "metrics shorter than the requested order");
    return h.truncated(top);
  };
  const RadialSeries d1 = curvature_difference(cut(T.h1), cut(S.h1));
  const RadialSeries d0 = curvature_difference(cut(T.h0), cut(S.h0));

  SimilarityReport r = certificate(d1, opts.grid, opts.bound);
  r.flags.hypercontraction_ok = hypercontractive_at_realization(T.h0, k0, opts.dim) &&
                                hypercontractive_at_realization(T.h1, k1, opts.dim);
  r.flags.condition2_ok = agree(data.phi_sq * data.ratio_T, data.ratio_S);
  if (*r.flags.condition2_ok) r.flags.consistency_ok = agree(d0, d1);
  downgrade_on_failed_preconditions(r);
  return r;
}

Condition2Report fbn_condition2_check(const std::vector<RadialSeries>& phi_sq, const std::vector<RadialSeries>& t_norms,
                                      const std::vector<RadialSeries>& K_norms, const PairMap& psi_mod,
                                      const PairMap& psi_tilde_mod) {
  const int n = static_cast<int>(t_norms.size());
  if (n < 2 || static_cast<int>(K_norms.size()) != n || static_cast<int>(phi_sq.size()) != n - 1)
    throw Error(ErrorCode::IndexMismatch, "need n norms on each side and n - 1 values of phi^2");
  Condition2Report r;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto key = std::make_pair(i, j);
      const auto p = psi_mod.find(key);
      const auto q = psi_tilde_mod.find(key);
      if (p == psi_mod.end() || q == psi_tilde_mod.end())
        throw Error(ErrorCode::IndexMismatch,
                    "missing cross data for pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      RadialSeries phi = phi_sq[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < j; ++k) phi = phi * phi_sq[static_cast<std::size_t>(k)];
      const auto& ti = t_norms[static_cast<std::size_t>(i)];
      const auto& tj = t_norms[static_cast<std::size_t>(j)];
      const auto& ki = K_norms[static_cast<std::size_t>(i)];
      const auto& kj = K_norms[static_cast<std::size_t>(j)];
      const RadialSeries lhs = phi * phi * p->second * ti * ti * kj * kj;
      const RadialSeries rhs = q->second * ki * ki * tj * tj;
      if (!agree(lhs, rhs)) {
        r.holds = false;
        r.failing_pairs.push_back(key);
      }
    }
  if (psi_mod.size() != static_cast<std::size_t>(n * (n - 1) / 2) || psi_tilde_mod.size() != psi_mod.size())
    throw Error(ErrorCode::IndexMismatch, "cross data has pairs outside 0 <= i < j < n");
  return r;
}

}  // namespace cdcurv
