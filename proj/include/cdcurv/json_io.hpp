#pragma once

#include <json.hpp>

#include <vector>

#include "cdcurv/fps.hpp"
#include "cdcurv/rational.hpp"

namespace cdcurv {

using Json = nlohmann::json;

/// Rationals travel as strings; plain JSON integers are accepted on input.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);

/// Lowest degree first.
Json series_to_json(const RadialSeries& f);
RadialSeries series_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j);

}  // namespace cdcurv
