#include "cdcurv/kernel.hpp"

#include <cstdint>

#include "cdcurv/error.hpp"

namespace cdcurv {

KernelSpec KernelSpec::power(const Rational& alpha) {
  KernelSpec s;
  s.kind = Kind::power;
  s.alpha = alpha;
  return s;
}

KernelSpec KernelSpec::coefficients(std::vector<Rational> a) {
  KernelSpec s;
  s.kind = Kind::coeffs;
  s.a = std::move(a);
  return s;
}

KernelSpec KernelSpec::product(KernelSpec l, KernelSpec r) {
  KernelSpec s;
  s.kind = Kind::product;
  s.left = std::make_shared<const KernelSpec>(std::move(l));
  s.right = std::make_shared<const KernelSpec>(std::move(r));
  return s;
}

KernelSpec KernelSpec::exp_poly(KernelSpec base, std::vector<Rational> poly) {
  KernelSpec s;
  s.kind = Kind::exp_poly;
  s.base = std::make_shared<const KernelSpec>(std::move(base));
  s.poly = std::move(poly);
  return s;
}

KernelSpec KernelSpec::scaled(const Rational& factor) const {
  KernelSpec s = *this;
  s.scale = scale ? Rational(*scale * factor) : factor;
  return s;
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::MalformedSpec, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

KernelSpec kernel_spec_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedSpec, "kernel spec must be an object");
  const Json& kind = require(j, "kind");
  if (!kind.is_string()) throw Error(ErrorCode::MalformedSpec, "'kind' must be a string");
  const auto name = kind.get<std::string>();

  KernelSpec spec;
  if (name == "power") {
    spec = KernelSpec::power(rational_from_json(require(j, "alpha")));
  } else if (name == "coeffs") {
    auto a = rationals_from_json(require(j, "a"));
    if (a.empty()) throw Error(ErrorCode::MalformedSpec, "empty coefficient list");
    spec = KernelSpec::coefficients(std::move(a));
  } else if (name == "product") {
    spec = KernelSpec::product(kernel_spec_from_json(require(j, "left")),
                               kernel_spec_from_json(require(j, "right")));
  } else if (name == "exp_poly") {
    spec = KernelSpec::exp_poly(kernel_spec_from_json(require(j, "base")),
                                rationals_from_json(require(j, "poly")));
  } else {
    throw Error(ErrorCode::MalformedSpec, "unknown kernel kind '" + name + "'");
  }
  if (j.contains("scale")) {
    Rational s = rational_from_json(j.at("scale"));
    if (sgn(s) <= 0) throw Error(ErrorCode::MalformedSpec, "scale must be positive");
    spec.scale = s;
  }
  return spec;
}

Json to_json(const KernelSpec& spec) {
  Json j;
  switch (spec.kind) {
    case KernelSpec::Kind::power:
      j = {{"kind", "power"}, {"alpha", to_string(spec.alpha)}};
      break;
    case KernelSpec::Kind::coeffs: {
      Json a = Json::array();
      for (const auto& c : spec.a) a.push_back(to_string(c));
      j = {{"kind", "coeffs"}, {"a", a}};
      break;
    }
    case KernelSpec::Kind::product:
      j = {{"kind", "product"}, {"left", to_json(*spec.left)}, {"right", to_json(*spec.right)}};
      break;
    case KernelSpec::Kind::exp_poly: {
      Json p = Json::array();
      for (const auto& c : spec.poly) p.push_back(to_string(c));
      j = {{"kind", "exp_poly"}, {"base", to_json(*spec.base)}, {"poly", p}};
      break;
    }
  }
  if (spec.scale) j["scale"] = to_string(*spec.scale);
  return j;
}

RadialSeries metric_series(const KernelSpec& spec, int order) {
  RadialSeries out(order);
  switch (spec.kind) {
    case KernelSpec::Kind::power: {
      // a_i = C(i + alpha - 1, i), built by the ratio a_i / a_{i-1} = (alpha + i - 1) / i.
      out[0] = 1;
      for (int i = 1; i <= order; ++i) out[i] = out[i - 1] * (spec.alpha + (i - 1)) / i;
      break;
    }
    case KernelSpec::Kind::coeffs:
      out = RadialSeries::from_coeffs(spec.a, order);
      break;
    case KernelSpec::Kind::product:
      out = metric_series(*spec.left, order) * metric_series(*spec.right, order);
      break;
    case KernelSpec::Kind::exp_poly: {
      RadialSeries p = RadialSeries::from_coeffs(spec.poly, order);
      if (sgn(p[0]) != 0)
        throw Error(ErrorCode::NonUnitConstant, "exp_poly needs a polynomial with zero constant term");
      out = metric_series(*spec.base, order) * exp(p);
      break;
    }
  }
  if (spec.scale) out *= *spec.scale;
  return out;
}

DiagonalKernel::DiagonalKernel(RadialSeries a, std::optional<KernelSpec> tag)
    : a_(std::move(a)), tag_(std::move(tag)) {
  if (a_[0] != 1) throw Error(ErrorCode::NonUnitConstant, "kernel needs a_0 = 1, got " + to_string(a_[0]));
}

DiagonalKernel kernel_from_spec(const KernelSpec& spec, int order) {
  RadialSeries a = metric_series(spec, order);
  if (sgn(a[0]) <= 0)
    throw Error(ErrorCode::NonUnitConstant, "kernel constant term must be positive, got " + to_string(a[0]));
  if (a[0] != 1) a *= 1 / Rational(a[0]);
  return DiagonalKernel(std::move(a), spec);
}

DiagonalKernel power_kernel(const Rational& alpha, int order) {
  return kernel_from_spec(KernelSpec::power(alpha), order);
}

PdVerdict validate_pd(const DiagonalKernel& k) {
  for (int i = 0; i <= k.order(); ++i)
    if (sgn(k[i]) < 0) return {false, i};
  return {};
}

RadialSeries line_curvature(const RadialSeries& h) {
  if (sgn(h[0]) <= 0)
    throw Error(ErrorCode::NonpositiveConstant, "metric needs h(0) > 0, got " + to_string(h[0]));
  RadialSeries unit = h;
  unit *= 1 / Rational(h[0]);
  return -del_delbar_radial(log(unit));
}

LogCoeffs log_coeffs(const DiagonalKernel& k) { return {log(k.coeffs())}; }

RadialSeries curvature_product_coeffs(const DiagonalKernel& k) {
  return k.coeffs() * del_delbar_radial(log(k.coeffs()));
}

RadialSeries curvature_product_from_log(const DiagonalKernel& k, const LogCoeffs& b) {
  const int order = std::min(k.order(), b.order()) - 1;
  RadialSeries out(order);
  for (int m = 0; m <= order; ++m) {
    Rational c = Rational((m + 1) * (m + 1)) * b.b(m + 1);
    for (int i = 1; i <= m; ++i) c += Rational(i * i) * k[m + 1 - i] * b.b(i);
    out[m] = c;
  }
  return out;
}

PdBound pd_necessary_bound(const DiagonalKernel& k, int n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "pd bound index must be >= 1");
  if (k.order() < n + 1)
    throw Error(ErrorCode::InsufficientOrder,
                "need a_" + std::to_string(n + 1) + " but kernel order is " + std::to_string(k.order()));
  const int top = n + 1;
  // composition sums sum_{l_1+...+l_k = i} prod a_{l_j} are the t^i coefficients of A^k,
  // A = K - 1.
  RadialSeries tail = k.coeffs().truncated(top);
  tail[0] = 0;
  std::vector<RadialSeries> powers{RadialSeries::constant(1, top), tail};
  for (int p = 2; p <= top; ++p) powers.push_back(powers.back() * tail);

  Rational inner = 0;
  for (int i = 1; i <= n; ++i) inner += Rational(i * i) * k[top - i] * k[i];
  for (int i = 2; i <= top; ++i)
    for (int p = 2; p <= i; ++p) {
      Rational term = (Rational(i * i) / p) * powers[static_cast<std::size_t>(p)][i] * k[top - i];
      if (p % 2 == 0) inner -= term;
      else inner += term;
    }

  PdBound out;
  out.bound = -inner / Rational(top * top);
  out.satisfied = k[top] >= out.bound;
  const RadialSeries product = curvature_product_coeffs(DiagonalKernel(k.coeffs().truncated(top)));
  out.product_coefficient = product[n];
  out.product_nonnegative = sgn(out.product_coefficient) >= 0;
  return out;
}

DiagonalKernel canonical_p_kernel(int p, int order) {
  if (p < 1) throw Error(ErrorCode::OutOfRange, "p must be a positive integer");
  RadialSeries base(order);
  base[0] = 1;
  if (order >= 1) base[1] = Rational(-p) / 2;
  return DiagonalKernel(exp_pow(base, Rational(-2) / p));
}

PowerEquationVerdict check_power_equation(const DiagonalKernel& k, int p) {
  if (p < 1) throw Error(ErrorCode::OutOfRange, "p must be a positive integer");
  PowerEquationVerdict v;
  v.lhs = del_delbar_radial(log(k.coeffs()));
  v.rhs = pow(k.coeffs(), static_cast<unsigned>(p));
  v.first_mismatch = first_mismatch(v.lhs, v.rhs);
  v.holds = v.first_mismatch < 0;
  return v;
}

DiagonalKernel solve_power_equation(int p, int order) {
  if (p < 1) throw Error(ErrorCode::OutOfRange, "p must be a positive integer");
  // The t^(n-1) coefficient of dd-bar log K is n^2 (a_n + terms in a_1..a_{n-1}), and the
  // t^(n-1) coefficient of K^p only involves a_0..a_{n-1}; each step fixes a_n uniquely.
  RadialSeries a = RadialSeries::constant(1, order);
  for (int n = 1; n <= order; ++n) {
    RadialSeries head = a.truncated(n);
    const Rational rhs = pow(head, static_cast<unsigned>(p))[n - 1];
    const Rational partial = log(head)[n];
    a[n] = rhs / Rational(n * n) - partial;
  }
  return DiagonalKernel(std::move(a));
}

Rational alternating_composition_sum(int n) {
  if (n < 1 || n > kCompositionSumMaxN)
    throw Error(ErrorCode::OutOfRange, "composition enumeration supports 1 <= n <= " + std::to_string(kCompositionSumMaxN));
  // A composition of n is a subset of the n-1 gaps between n units; bit g set cuts after unit g+1.
  std::vector<Integer> by_parts(static_cast<std::size_t>(n) + 1);
  const std::uint32_t gaps = static_cast<std::uint32_t>(n - 1);
  for (std::uint32_t mask = 0; mask < (1u << gaps); ++mask) {
    std::uint64_t product = 1;
    int parts = 0;
    int run = 1;
    for (std::uint32_t g = 0; g < gaps; ++g) {
      if (mask & (1u << g)) {
        product *= static_cast<std::uint64_t>(run + 1);
        ++parts;
        run = 1;
      } else {
        ++run;
      }
    }
    product *= static_cast<std::uint64_t>(run + 1);
    ++parts;
    by_parts[static_cast<std::size_t>(parts)] += Integer(static_cast<unsigned long>(product));
  }
  Rational total = 0;
  for (int k = 1; k <= n; ++k) {
    Rational term(by_parts[static_cast<std::size_t>(k)], Integer(k));
    term.canonicalize();
    if (k % 2 == 1) total += term;
    else total -= term;
  }
  return total;
}

}  // namespace cdcurv
