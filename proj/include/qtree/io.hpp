#pragma once

#include "qtree/family.hpp"
#include "qtree/position.hpp"
#include "qtree/ring_oracle.hpp"
#include "qtree/topology.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qtree {

using Json = nlohmann::json;

/// Malformed JSON input. Distinct from ComputationError so callers can map it to a usage error.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Paths are arrays of step strings, ["0", "inf", "-1/2"]; the literal "[0, inf, -1/2]" is accepted on input.
Json path_to_json(const Path& path);
Path path_from_json(const Json& j);

// {"kind": "first", "h": "y - x"}, {"kind": "second", "point": [...]},
// {"kind": "minimal", "prefix": [...], "period": [...]}, {"kind": "curve", "h": "..."}.
// Input also takes {"kind": "monomial", "a": 2, "b": 3}.
Json valuation_to_json(const ValuationDescriptor& v);
ValuationDescriptor valuation_from_json(const Json& j);

// {"kind": "fiber", "base": [...], "excluded": ["0"], "tail": ["inf"], "a_parameter": true},
// {"kind": "singleton", "point": [...]}, {"kind": "chain", "valuation": {...}, "from": 1},
// {"kind": "siblings", "valuation": {...}, "offset": "1"}.
Json family_to_json(const Family& f);
Family family_from_json(const Json& j);
/// A family set is an array of parts; a single part object is read as a one-part set.
Json family_set_to_json(const FamilySet& set);
FamilySet family_set_from_json(const Json& j);

Json generator_to_json(const Generator& g);
Json to_json(const Resolution& r);
Json to_json(const MembershipAnswer& a);
Json to_json(const IrredundanceResult& r);
Json to_json(const NoetherianCertificate& c);
Json to_json(const ClosedSetRepr& c);
Json to_json(const DemoReport& r);

struct DotOptions {
  std::vector<Step> alphabet;
  std::size_t max_level = 3;
  std::size_t node_cap = 2000;
};

/// Graphviz text for the root and the downset of the members within the
/// bounds. Members are filled; dashed edges point from a node to a
/// proximate ancestor other than its parent. Throws ComputationError above
/// the node cap.
std::string export_dot(const FamilySet& set, const DotOptions& options);

}  // namespace qtree
