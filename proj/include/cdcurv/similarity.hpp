#pragma once

// Curvature-difference similarity certificates: a radial potential psi with
// dd-bar psi = K_S - K_T is sought and classified as bounded and
// subharmonic (certified), divergent (not certified) or undecided.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdcurv/bundle.hpp"
#include "cdcurv/fps.hpp"
#include "cdcurv/json_io.hpp"

namespace cdcurv {

enum class Verdict { certified, not_certified, undecided };
std::string_view to_string(Verdict v);

std::vector<double> default_grid();  ///< 0, 0.1, ..., 0.9
inline constexpr double kDefaultBound = 1e6;
inline constexpr int kTailLength = 8;

struct SimilarityFlags {
  std::optional<bool> hypercontraction_ok;  ///< checked at the shift realization only
  std::optional<bool> condition2_ok;
  std::optional<bool> consistency_ok;  ///< K_S0 - K_T0 == K_S1 - K_T1
};

struct TailDiagnostics {
  double partial_sum = 0;      ///< sum |c_n|
  double signed_sum = 0;       ///< sum c_n
  double ratio = 0;            ///< geometric fit of |c_n| over the tail
  double raabe = 0;            ///< mean n (|c_n| / |c_{n+1}| - 1)
  bool tail_zero = false;
  bool tail_nonneg = false;
  bool summable = false;
  bool divergent = false;
};

struct SimilarityReport {
  RadialSeries difference;
  RadialSeries psi;
  Verdict verdict = Verdict::undecided;
  SimilarityFlags flags;
  std::vector<double> grid;
  std::vector<double> difference_on_grid;
  std::vector<double> laplacian_on_grid;  ///< dd-bar psi
  TailDiagnostics tail;
  std::string reason;
};

Json to_json(const SimilarityReport& r);

/// K_S - K_T = dd-bar log(hT / hS).  Throws NonpositiveConstant.
RadialSeries curvature_difference(const RadialSeries& hT, const RadialSeries& hS);

/// psi_0 = 0, psi_n = d_{n-1} / n^2, so dd-bar psi = d exactly.
RadialSeries radial_potential_solve(const RadialSeries& d);

TailDiagnostics tail_diagnostics(const RadialSeries& psi, double bound);

SimilarityReport certificate(const RadialSeries& d, const std::vector<double>& grid = default_grid(),
                             double bound = kDefaultBound);

struct SimilarityOptions {
  std::vector<double> grid = default_grid();
  double bound = kDefaultBound;
  int dim = 200;    ///< shift realization size for the hypercontraction test
  int order = kDefaultOrder;  ///< order of the difference handed to the certificate
};

/// Line-bundle version: T and S are single metrics, S a power kernel
/// (1 - t)^(-k).  T is tested for k-hypercontractivity.  Metrics must carry
/// at least min(dim, order) + 1 coefficients.  Throws NotPowerKernel.
SimilarityReport line_similarity_report(const RadialSeries& hT, const RadialSeries& hS,
                                        const SimilarityOptions& opts = {});

struct ScalarData {
  RadialSeries phi_sq;   ///< |phi|^2
  RadialSeries ratio_T;  ///< |S_{01} t_1|^2 / |t_1|^2
  RadialSeries ratio_S;  ///< |S~_{01} K_1|^2 / K_1
};

/// Defaults: phi^2 = 1 and each ratio taken from the spec, or h0 / h1.
ScalarData default_scalar_data(const FrameSpecFB2& T, const FrameSpecFB2& S);

/// Throws NotPowerKernel when S's metrics are not scaled power kernels.
SimilarityReport fb2_similarity_report(const FrameSpecFB2& T, const FrameSpecFB2& S, const ScalarData& data,
                                       const SimilarityOptions& opts = {});

using PairMap = std::map<std::pair<int, int>, RadialSeries>;

struct Condition2Report {
  bool holds = true;
  std::vector<std::pair<int, int>> failing_pairs;
};

/// (prod_{k=i}^{j-1} phi_k^2)^2 |psi_ij|^2 |t_i|^4 |K_j|^4
///   == |psi~_ij|^2 |K_i|^4 |t_j|^4 for all i < j, written with the squared
/// norms t_norms, K_norms.  Throws IndexMismatch.
Condition2Report fbn_condition2_check(const std::vector<RadialSeries>& phi_sq, const std::vector<RadialSeries>& t_norms,
                                      const std::vector<RadialSeries>& K_norms, const PairMap& psi_mod,
                                      const PairMap& psi_tilde_mod);

}  // namespace cdcurv
