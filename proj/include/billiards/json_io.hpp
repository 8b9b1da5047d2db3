#pragma once
// JSON encodings for the library types; all integers are string-encoded to
// avoid 64-bit truncation, and object key order is deterministic.

#include <json.hpp>

#include "billiards/conic.hpp"
#include "billiards/dual_billiard.hpp"
#include "billiards/flow.hpp"
#include "billiards/hessian.hpp"
#include "billiards/integrals.hpp"
#include "billiards/poly.hpp"
#include "billiards/projective.hpp"
#include "billiards/quasihomog.hpp"

namespace billiards {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);
// Compact single-token form ("3/2", "-1/2+1/2*sqrt(-3)") used for map keys.
std::string scalar_key(const Scalar& s);
Scalar scalar_from_string(const std::string& text);  // rationals only

Json to_json(const HomPoint& p);
HomPoint point_from_json(const Json& j);

Json to_json(const MobiusMap& m);

Json to_json(const Conic& c);
Conic conic_from_json(const Json& j);

Json to_json(const Pencil& p);
Pencil pencil_from_json(const Json& j);

Json to_json(const BilliardSpec& s);
BilliardSpec spec_from_json(const Json& j);

Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json to_json(const HomRational& r);

Json to_json(const ResidueReport& r);
Json to_json(const VerifyReport& r, const BilliardSpec& spec);
Json to_json(const EquivalenceReport& r, const std::string& which);
Json to_json(const OdeReport& r);
Json to_json(const HessianOnCurve& h);
Json to_json(const RhoClass& c, const BigRat& rho);
Json to_json(const Primitive& p);
Json to_json(const Trajectory& t);

Json to_json(const TransversalField& f);
TransversalField field_from_json(const Json& j);

}  // namespace billiards
