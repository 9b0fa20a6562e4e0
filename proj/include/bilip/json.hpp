#pragma once

#include <json.hpp>

#include "bilip/oracle.hpp"

namespace bilip {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const Rational& q);
Json to_json(const Order& o);
Json to_json(const PuiseuxArc& arc);
Json to_json(const GermExpansion& g);
Json to_json(const PolarArc& a);
Json to_json(const Canyon& c);
Json to_json(const TangentCone& cone);
Json to_json(const Inv2& inv);
Json to_json(const EquivalenceReport& r);
Json to_json(const SelftestRow& row);

/// Inverse of to_json for scalars and rationals.
Scalar scalar_from_json(const Json& j);
Rational rational_from_json(const Json& j);

}  // namespace bilip
