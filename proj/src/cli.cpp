#include "cdcurv/cli.hpp"

#include <algorithm>
#include <complex>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdcurv/bundle.hpp"
#include "cdcurv/error.hpp"
#include "cdcurv/json_io.hpp"
#include "cdcurv/kernel.hpp"
#include "cdcurv/numeric_frame.hpp"
#include "cdcurv/random.hpp"
#include "cdcurv/shift.hpp"
#include "cdcurv/similarity.hpp"

namespace cdcurv::cli {

namespace {

struct Config {
  int order = kDefaultOrder;
  std::string format = "json";
  std::string grid_text;
  std::vector<double> grid = default_grid();
  int dim = 200;
  double bound = kDefaultBound;
  unsigned long long seed = kDefaultSeed;
};

std::string read_arg(const std::string& text) {
  if (text.empty() || text[0] != '@') return text;
  std::ifstream in(text.substr(1));
  if (!in) throw Error(ErrorCode::MalformedSpec, "cannot read " + text.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_arg(const std::string& text, const char* what) {
  try {
    return Json::parse(read_arg(text));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("invalid JSON for ") + what + ": " + e.what());
  }
}

/// Kernel spec object or raw coefficient array.
RadialSeries metric_from_json(const Json& j, int order) {
  if (j.is_array()) return RadialSeries::from_coeffs(rationals_from_json(j), order);
  return metric_series(kernel_spec_from_json(j), order);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      if (x < 0 || x >= 1) throw Error(ErrorCode::OutOfRange, "grid values must lie in [0, 1)");
      grid.push_back(x);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::MalformedSpec, "bad grid value '" + item + "'");
    }
  }
  if (grid.empty()) throw Error(ErrorCode::MalformedSpec, "empty grid");
  return grid;
}

/// "0.3", "-0.2", "0.6i", "i", "0.1+0.2i", "0.1-0.2i".
std::complex<double> parse_complex(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  auto number = [&text](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != s.size()) throw Error(ErrorCode::MalformedSpec, "bad complex number '" + text + "'");
    return v;
  };
  if (text.empty()) throw Error(ErrorCode::MalformedSpec, "empty complex number");
  if (text.back() != 'i') return {number(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(body)};
  return {number(body.substr(0, split)), number(body.substr(split))};
}

void print_table(std::ostream& out, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (value.is_structured()) print_table(out, value, name);
      else out << std::left << std::setw(28) << name << ' ' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string name = prefix + "[" + std::to_string(i) + "]";
      if (j[i].is_structured()) print_table(out, j[i], name);
      else out << std::left << std::setw(28) << name << ' ' << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump()) << '\n';
    }
  } else {
    out << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(std::ostream& out, const Config& cfg, const Json& j) {
  if (cfg.format == "table") print_table(out, j, "");
  else out << j.dump() << '\n';
}

bool is_frame(const Json& j) { return j.is_object() && j.contains("h0"); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Curvature, kernel and similarity computations for Cowen-Douglas operators", "cdcurv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--order", cfg.order, "truncation order")->envname("CDCURV_ORDER")->check(CLI::Range(4, 100000));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--grid", cfg.grid_text, "comma-separated grid in [0, 1)");
  app.add_option("--dim", cfg.dim, "truncation dimension")->check(CLI::PositiveNumber);
  app.add_option("--bound", cfg.bound, "bound on the potential");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  std::string spec, t_spec, s_spec, h0_spec, h1_spec, a_text = "1", w_text = "0";
  int n = 1, p = 1, trials = 100, matrix_n = 4, hyper = 0, k0 = 1, k1 = 1;
  long m_max = 100000;
  double step = kDefaultStep, tol = 1e-5;

  std::map<std::string, std::function<int()>> handlers;
  auto sub = [&app](const char* name, const char* help) { return app.add_subcommand(name, help); };

  auto* curvature = sub("curvature", "line curvature -dd-bar log h of a metric");
  curvature->add_option("--spec", spec, "kernel spec")->required();
  handlers["curvature"] = [&] {
    emit(out, cfg, series_to_json(line_curvature(metric_from_json(parse_json_arg(spec, "--spec"), cfg.order))));
    return kOk;
  };

  auto* logk = sub("logk", "coefficients b_n of log K");
  logk->add_option("--spec", spec, "kernel spec")->required();
  handlers["logk"] = [&] {
    const auto k = kernel_from_spec(kernel_spec_from_json(parse_json_arg(spec, "--spec")), cfg.order);
    emit(out, cfg, series_to_json(log_coeffs(k).series));
    return kOk;
  };

  auto* pd_check = sub("pd-check", "positive definiteness of a diagonal kernel");
  pd_check->add_option("--spec", spec, "kernel spec")->required();
  handlers["pd-check"] = [&] {
    const auto k = kernel_from_spec(kernel_spec_from_json(parse_json_arg(spec, "--spec")), cfg.order);
    const auto v = validate_pd(k);
    emit(out, cfg, {{"positive_definite", v.positive_definite}, {"first_offending_index", v.first_offending_index}});
    return v.positive_definite ? kOk : kVerdictFailure;
  };

  auto* pd_bound = sub("pd-bound", "necessary lower bound on a_{n+1}");
  pd_bound->add_option("--spec", spec, "kernel spec")->required();
  pd_bound->add_option("--n", n, "index")->required();
  handlers["pd-bound"] = [&] {
    const auto k = kernel_from_spec(kernel_spec_from_json(parse_json_arg(spec, "--spec")), std::max(cfg.order, n + 1));
    const auto b = pd_necessary_bound(k, n);
    emit(out, cfg,
         {{"n", n},
          {"bound", rational_to_json(b.bound)},
          {"a_next", rational_to_json(k[n + 1])},
          {"satisfied", b.satisfied},
          {"product_coefficient", rational_to_json(b.product_coefficient)},
          {"product_nonnegative", b.product_nonnegative}});
    return b.satisfied ? kOk : kVerdictFailure;
  };

  auto* power_equation = sub("theorem-p", "dd-bar log K = K^p for the canonical or a given kernel");
  power_equation->add_option("--p", p, "exponent")->required()->check(CLI::PositiveNumber);
  power_equation->add_option("--spec", spec, "kernel spec (canonical kernel when omitted)");
  handlers["theorem-p"] = [&] {
    const DiagonalKernel k = spec.empty()
                                 ? canonical_p_kernel(p, cfg.order)
                                 : kernel_from_spec(kernel_spec_from_json(parse_json_arg(spec, "--spec")), cfg.order);
    const auto v = check_power_equation(k, p);
    const DiagonalKernel solved = solve_power_equation(p, cfg.order);
    const bool solve_ok = agree(solved.coeffs(), canonical_p_kernel(p, cfg.order).coeffs());
    emit(out, cfg,
         {{"p", p},
          {"holds", v.holds},
          {"first_mismatch", v.first_mismatch},
          {"kernel", series_to_json(k.coeffs())},
          {"power", series_to_json(v.rhs)},
          {"solve_matches_canonical", solve_ok}});
    return v.holds && solve_ok ? kOk : kVerdictFailure;
  };

  auto* composition = sub("lemma-2n", "alternating composition sum, expected 2/n");
  composition->add_option("--n", n, "index")->required();
  handlers["lemma-2n"] = [&] {
    const Rational value = alternating_composition_sum(n);
    const Rational expected = Rational(2) / n;
    emit(out, cfg,
         {{"value", rational_to_json(value)}, {"expected", rational_to_json(expected)}, {"ok", value == expected}});
    return value == expected ? kOk : kVerdictFailure;
  };

  auto* fb2 = sub("fb2", "two-step frame: det, trace report, theta^2, additivity");
  fb2->add_option("--spec", spec, "frame spec")->required();
  handlers["fb2"] = [&] {
    const Json j = parse_json_arg(spec, "--spec");
    const auto frame = frame_fb2_from_json(j, cfg.order + 2);
    const auto report = det_trace_report(gram_fb2(frame));
    Json o{{"det", series_to_json(report.det)},
           {"trace_curv", series_to_json(report.trace_curv)},
           {"det_curv", series_to_json(report.det_curv)},
           {"equal", report.equal}};
    if (frame.ratio) o["theta_sq"] = series_to_json(second_fundamental_form_sq(frame, *frame.ratio));
    if (frame.cross) o["cross"] = series_to_json(*frame.cross);
    const RadialSeries k1 = j.contains("k1") ? metric_from_json(j.at("k1"), cfg.order + 2) : frame.h1;
    const auto add = trace_additivity_report(frame, k1);
    o["additivity"] = {{"additive", add.additive},
                       {"lambda", add.lambda ? rational_to_json(*add.lambda) : Json(nullptr)}};
    emit(out, cfg, o);
    return report.equal ? kOk : kVerdictFailure;
  };

  auto* fb3 = sub("fb3", "three-step frame: det and trace report");
  fb3->add_option("--spec", spec, "frame spec with explicit k")->required();
  handlers["fb3"] = [&] {
    const auto frame = frame_fb3_from_json(parse_json_arg(spec, "--spec"), cfg.order + 2);
    const auto report = det_trace_report(gram_fb3(frame));
    emit(out, cfg,
         {{"det", series_to_json(report.det)},
          {"trace_curv", series_to_json(report.trace_curv)},
          {"det_curv", series_to_json(report.det_curv)},
          {"equal", report.equal}});
    return report.equal ? kOk : kVerdictFailure;
  };

  auto* det_identity = sub("det-identity", "minor determinant identity on random rational matrices");
  det_identity->add_option("--trials", trials, "number of matrices")->check(CLI::PositiveNumber);
  det_identity->add_option("--n", matrix_n, "matrix size")->check(CLI::Range(3, 12));
  handlers["det-identity"] = [&] {
    Rng rng(cfg.seed);
    int failures = 0, singular = 0;
    for (int trial = 0; trial < trials; ++trial) {
      const RationalMatrix a = random_rational_matrix(rng, matrix_n, trial % 10 == 0);
      if (sgn(determinant(a)) == 0) ++singular;
      if (!minor_det_identity_check(a).holds) ++failures;
    }
    emit(out, cfg,
         {{"n", matrix_n}, {"trials", trials}, {"singular_cases", singular}, {"failures", failures},
          {"holds", failures == 0}, {"seed", cfg.seed}});
    return failures == 0 ? kOk : kVerdictFailure;
  };

  auto* tensor = sub("tensor", "curvature of a bundle twisted by a polynomial line bundle");
  tensor->add_option("--spec", spec, R"({"h1": metric or {"fb2": frame}, "sections": [[...], ...]})")->required();
  handlers["tensor"] = [&] {
    const Json j = parse_json_arg(spec, "--spec");
    if (!j.is_object() || !j.contains("h1") || !j.contains("sections"))
      throw Error(ErrorCode::MalformedSpec, "tensor spec needs 'h1' and 'sections'");
    const Json& h = j.at("h1");
    GramSeriesMatrix gram;
    if (h.is_object() && h.contains("fb2")) {
      gram = gram_fb2(frame_fb2_from_json(h.at("fb2"), cfg.order / 2 + 1));
    } else {
      gram = GramSeriesMatrix(1);
      gram(0, 0) = radial_lift(metric_from_json(h, cfg.order / 2 + 1)).truncated(cfg.order);
    }
    std::vector<std::vector<Rational>> sections;
    for (const auto& e : j.at("sections")) sections.push_back(rationals_from_json(e));
    const auto r = tensor_curvature(gram, sections);
    Json o{{"rank", gram.size()}, {"additive", r.additive}};
    if (r.line_curv.is_radial()) o["line_curv"] = series_to_json(radial_restrict(r.line_curv));
    emit(out, cfg, o);
    return r.additive ? kOk : kVerdictFailure;
  };

  auto* shift = sub("shift", "weighted shift realization and hypercontraction defects");
  shift->add_option("--spec", spec, "kernel spec")->required();
  shift->add_option("--hyper", hyper, "defect order m");
  handlers["shift"] = [&] {
    const auto k = kernel_from_spec(kernel_spec_from_json(parse_json_arg(spec, "--spec")), cfg.dim);
    const auto s = shift_from_kernel(k, cfg.dim);
    Json o{{"dim", s.dim}};
    Json weights = Json::array();
    for (const auto& w : s.squared_weights) weights.push_back(rational_to_json(w));
    o["squared_weights"] = weights;
    int code = kOk;
    if (hyper > 0) {
      const auto d = hypercontraction_defect(s, hyper);
      Json diag = Json::array();
      for (const auto& x : d.diag) diag.push_back(rational_to_json(x));
      o["defect"] = {{"m", hyper}, {"diag", diag}, {"nonneg", d.nonneg}, {"first_negative", d.first_negative}};
      if (!d.nonneg) code = kVerdictFailure;
    }
    emit(out, cfg, o);
    return code;
  };

  auto* homogeneous = sub("homogeneous", "homogeneity of a two-step operator");
  homogeneous->add_option("--h0", h0_spec, "kernel spec of t_0")->required();
  homogeneous->add_option("--h1", h1_spec, "kernel spec of t_1")->required();
  homogeneous->add_option("--a", a_text, "intertwiner scalar");
  handlers["homogeneous"] = [&] {
    const auto h0 = kernel_from_spec(kernel_spec_from_json(parse_json_arg(h0_spec, "--h0")), cfg.order);
    const auto h1 = kernel_from_spec(kernel_spec_from_json(parse_json_arg(h1_spec, "--h1")), cfg.order);
    const auto v = homogeneity_check(h0, h1, parse_rational(a_text));
    emit(out, cfg,
         {{"homogeneous", v.homogeneous}, {"alpha", v.alpha ? Json(*v.alpha) : Json(nullptr)}, {"reason", v.reason}});
    return v.homogeneous ? kOk : kVerdictFailure;
  };

  auto* rigidity = sub("rigidity", "asymptotics of m times the product ratio of two power shifts");
  rigidity->add_option("--k0", k0, "exponent of the first shift")->required()->check(CLI::PositiveNumber);
  rigidity->add_option("--k1", k1, "exponent of the second shift")->required()->check(CLI::PositiveNumber);
  rigidity->add_option("--m-max", m_max, "largest sample");
  handlers["rigidity"] = [&] {
    const auto r = rigidity_exponent(k0, k1, m_max);
    Json samples = Json::array();
    for (const auto& s : r.samples) samples.push_back({{"m", s.m}, {"ratio", s.ratio}, {"log_ratio", s.log_ratio}});
    emit(out, cfg,
         {{"exponent", rational_to_json(r.exponent)},
          {"exponent_value", r.exponent.get_d()},
          {"fitted_slope", r.fitted_slope},
          {"samples", samples}});
    return kOk;
  };

  auto* similar = sub("similar", "curvature-difference similarity certificate");
  similar->add_option("--t", t_spec, "kernel or frame spec of T")->required();
  similar->add_option("--s", s_spec, "kernel or frame spec of S")->required();
  handlers["similar"] = [&] {
    const Json tj = parse_json_arg(t_spec, "--t");
    const Json sj = parse_json_arg(s_spec, "--s");
    SimilarityOptions opts;
    opts.grid = cfg.grid;
    opts.bound = cfg.bound;
    opts.dim = cfg.dim;
    opts.order = cfg.order;
    const int build = std::max(cfg.order + 1, cfg.dim);
    SimilarityReport r;
    if (is_frame(tj) != is_frame(sj)) throw Error(ErrorCode::MalformedSpec, "--t and --s must both be frames or kernels");
    if (is_frame(tj)) {
      const auto T = frame_fb2_from_json(tj, build);
      const auto S = frame_fb2_from_json(sj, build);
      r = fb2_similarity_report(T, S, default_scalar_data(T, S), opts);
    } else {
      r = line_similarity_report(metric_from_json(tj, build), metric_from_json(sj, build), opts);
    }
    emit(out, cfg, to_json(r));
    return r.verdict == Verdict::certified ? kOk : kVerdictFailure;
  };

  auto* hs = sub("hs-check", "Hilbert-Schmidt norm of dP against -trace K");
  hs->add_option("--spec", spec, "kernel or frame spec")->required();
  hs->add_option("--w", w_text, "point in the disk, e.g. 0.3 or 0.6i");
  hs->add_option("--step", step, "finite-difference step");
  hs->add_option("--tol", tol, "allowed gap");
  handlers["hs-check"] = [&] {
    const Json j = parse_json_arg(spec, "--spec");
    const int build = std::max(cfg.order + 2, cfg.dim);
    NumericFrame f;
    if (is_frame(j)) {
      const auto frame = frame_fb2_from_json(j, build);
      f = numeric_frame_fb2(frame.h0, frame.h1, cfg.dim, cfg.order);
    } else {
      f = numeric_frame_from_kernel(kernel_from_spec(kernel_spec_from_json(j), build), cfg.dim, cfg.order);
    }
    const auto r = projection_hs_check(f, parse_complex(w_text), step);
    emit(out, cfg, {{"hs_sq", r.hs_sq}, {"neg_trace_curv", r.neg_trace_curv}, {"gap", r.gap}, {"ok", r.gap < tol}});
    return r.gap < tol ? kOk : kVerdictFailure;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (!cfg.grid_text.empty()) cfg.grid = parse_grid(cfg.grid_text);
    for (auto* s : app.get_subcommands()) {
      const auto it = handlers.find(s->get_name());
      if (it != handlers.end()) return it->second();
    }
    err << "no subcommand\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace cdcurv::cli
