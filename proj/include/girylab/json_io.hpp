#pragma once

#include <json.hpp>

#include "girylab/algebras.hpp"
#include "girylab/amplitudes.hpp"
#include "girylab/stdspace.hpp"

namespace girylab {

using Json = nlohmann::json;

// Wire formats. Rationals travel as exact strings ("num/den", or "num" for
// integers); decimal floats never appear.
//
//   distribution   {"weights": [[index, "num/den"], ...]}
//                  + optional {"tail": {"kind": "geometric", "start": n, "ratio": "num/den"}}
//   amplitudes     {"amplitudes": [[index, "re", "im"], ...]}
//   tree           {"points": [...], "splits": [{"atom": i, "left": [...], "right": [...]}]}
//   element        unsigned integer | rational string | "inf" | "_0" / "_u" / "_1"
//                  | a distribution object
//   sequence       {"0": element, "1": element, ..., "default": rule}
//   set            {"elems": [...]} | {"complement_of": [...]}
//   index map      {"table": [...]} | {"rule": "identity"} | {"constant": k} | {"swap": [a, b]}

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json dist_to_json(const Dist& d);
Dist dist_from_json(const Json& j);

Json dist_over_dist_to_json(const DistOverDist& q);
DistOverDist dist_over_dist_from_json(const Json& j);

Json amp_to_json(const AmpDist& a);
AmpDist amp_from_json(const Json& j);

Json tree_to_json(const RefinementTree& t);
RefinementTree tree_from_json(const Json& j);

Json elem_to_json(const Elem& e);
Elem elem_from_json(const Json& j);

Json carrier_dist_to_json(const CarrierDist& p);
CarrierDist carrier_dist_from_json(const Json& j);

SeqMap seqmap_from_json(const Json& j);
NatSet natset_from_json(const Json& j);
NatMap natmap_from_json(const Json& j);

/// Parses a JSON document, mapping syntax errors onto Errc::parse_error.
Json parse_json_text(const std::string& text);

}  // namespace girylab
