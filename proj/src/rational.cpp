#include "cdcurv/rational.hpp"

#include <cctype>

#include "cdcurv/error.hpp"

namespace cdcurv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorCode::IrrationalScale: return "IrrationalScale";
    case ErrorCode::NotRadial: return "NotRadial";
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::NonUnitConstant: return "NonUnitConstant";
    case ErrorCode::NonpositiveConstant: return "NonpositiveConstant";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::SingularConstantTerm: return "SingularConstantTerm";
    case ErrorCode::NotRadialDeterminant: return "NotRadialDeterminant";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ZeroSection: return "ZeroSection";
    case ErrorCode::IllConditionedFrame: return "IllConditionedFrame";
    case ErrorCode::NonpositiveCoefficient: return "NonpositiveCoefficient";
    case ErrorCode::NotPowerKernel: return "NotPowerKernel";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::MalformedSpec, "not a rational: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
      throw fail();
    Integer d = parse_integer(den);
    if (d == 0) throw fail();
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw fail();
    if ((!whole.empty() && !valid_integer(whole)) || (!frac.empty() && !valid_integer(frac)) ||
        (!frac.empty() && (frac.front() == '-' || frac.front() == '+')))
      throw fail();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits = parse_integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Rational q(digits, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  if (!valid_integer(s)) throw fail();
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational binomial(const Rational& top, unsigned long k) {
  Rational acc = 1;
  for (unsigned long j = 0; j < k; ++j) acc *= (top - j) / Rational(j + 1);
  return acc;
}

Rational pow_int(const Rational& base, long e) {
  Rational result = 1;
  Rational b = e < 0 ? Rational(1 / base) : base;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_pow_ui(result.get_num_mpz_t(), b.get_num_mpz_t(), n);
  mpz_pow_ui(result.get_den_mpz_t(), b.get_den_mpz_t(), n);
  result.canonicalize();
  return result;
}

std::optional<Rational> rational_power(const Rational& base, const Rational& exponent) {
  if (sgn(base) <= 0) return std::nullopt;
  if (!exponent.get_num().fits_slong_p() || !exponent.get_den().fits_ulong_p()) return std::nullopt;
  unsigned long root = exponent.get_den().get_ui();
  Integer num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), base.get_num_mpz_t(), root) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), base.get_den_mpz_t(), root) == 0) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return pow_int(r, exponent.get_num().get_si());
}

}  // namespace cdcurv
