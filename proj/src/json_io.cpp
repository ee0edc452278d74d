#include "cdcurv/json_io.hpp"

#include "cdcurv/error.hpp"

namespace cdcurv {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw Error(ErrorCode::MalformedSpec, "expected a rational string, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return to_string(q); }

Json series_to_json(const RadialSeries& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_string(c));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedSpec, "expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

RadialSeries series_from_json(const Json& j) {
  auto coeffs = rationals_from_json(j);
  if (coeffs.empty()) throw Error(ErrorCode::MalformedSpec, "empty series");
  return RadialSeries(std::move(coeffs));
}

}  // namespace cdcurv
