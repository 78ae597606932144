#include "qtree/io.hpp"

#include "qtree/proximity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qtree {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text_of(const Json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(std::string(what) + " must be a string");
}

Step step_from_json(const Json& j) {
  try {
    return Step::parse(text_of(j, "step"));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("bad step: ") + e.what());
  }
}

std::vector<Step> steps_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of steps");
  std::vector<Step> out;
  for (const auto& s : j) out.push_back(step_from_json(s));
  return out;
}

Poly poly_from_json(const Json& j) {
  try {
    return parse_poly(text_of(j, "h"));
  } catch (const std::exception& e) {
    bad(std::string("bad polynomial: ") + e.what());
  }
}

Json points_to_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(path_to_json(p.path()));
  return out;
}

Json valuations_to_json(const std::vector<ValuationDescriptor>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(valuation_to_json(v));
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json path_to_json(const Path& path) {
  Json out = Json::array();
  for (const auto& s : path) out.push_back(s.to_string());
  return out;
}

Path path_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_path(j.get<std::string>());
    } catch (const std::exception& e) {
      bad(std::string("bad path: ") + e.what());
    }
  }
  return steps_from_json(j);
}

Json valuation_to_json(const ValuationDescriptor& v) {
  switch (v.kind()) {
    case ValuationDescriptor::Kind::first_kind: return {{"kind", "first"}, {"h", v.curve().to_string()}};
    case ValuationDescriptor::Kind::second_kind: return {{"kind", "second"}, {"point", path_to_json(v.center().path())}};
    case ValuationDescriptor::Kind::eventually_periodic:
      return {{"kind", "minimal"}, {"prefix", path_to_json(v.prefix())}, {"period", path_to_json(v.period())}};
    case ValuationDescriptor::Kind::curve_branch: return {{"kind", "curve"}, {"h", v.curve().to_string()}};
  }
  return {};
}

ValuationDescriptor valuation_from_json(const Json& j) {
  const std::string kind = text_of(field(j, "kind"), "kind");
  try {
    if (kind == "first") return ValuationDescriptor::first_kind(poly_from_json(field(j, "h")));
    if (kind == "second") return ValuationDescriptor::second_kind(Point::from_path(path_from_json(field(j, "point"))));
    if (kind == "minimal")
      return ValuationDescriptor::eventually_periodic(path_from_json(field(j, "prefix")), path_from_json(field(j, "period")));
    if (kind == "curve") return ValuationDescriptor::curve_branch(poly_from_json(field(j, "h")));
    if (kind == "monomial") {
      const Json& a = field(j, "a");
      const Json& b = field(j, "b");
      if (!a.is_number_unsigned() || !b.is_number_unsigned() || a.get<unsigned>() == 0 || b.get<unsigned>() == 0)
        bad("monomial weights must be positive integers");
      return ValuationDescriptor::monomial(a.get<unsigned>(), b.get<unsigned>());
    }
  } catch (const std::invalid_argument& e) {
    bad(std::string("bad valuation: ") + e.what());
  }
  bad("unknown valuation kind '" + kind + "'");
}

Json family_to_json(const Family& f) {
  Json out;
  switch (f.kind()) {
    case Family::Kind::singleton:
      out = {{"kind", "singleton"}, {"point", path_to_json(f.point().path())}};
      break;
    case Family::Kind::fiber:
      out = {{"kind", "fiber"}, {"base", path_to_json(f.point().path())}, {"excluded", path_to_json(f.excluded())},
             {"tail", path_to_json(f.tail())}};
      if (f.a_parameter()) out["a_parameter"] = true;
      break;
    case Family::Kind::chain:
      out = {{"kind", "chain"}, {"valuation", valuation_to_json(f.valuation())}, {"from", f.from_level()}};
      break;
    case Family::Kind::siblings:
      out = {{"kind", "siblings"}, {"valuation", valuation_to_json(f.valuation())}, {"offset", to_string(f.offset())}};
      break;
  }
  return out;
}

Family family_from_json(const Json& j) {
  const std::string kind = text_of(field(j, "kind"), "kind");
  try {
    if (kind == "singleton") return Family::singleton(Point::from_path(path_from_json(field(j, "point"))));
    if (kind == "fiber") {
      const Point base = Point::from_path(path_from_json(field(j, "base")));
      const std::vector<Step> excluded = j.contains("excluded") ? steps_from_json(j.at("excluded")) : std::vector<Step>{};
      const Path tail = j.contains("tail") ? path_from_json(j.at("tail")) : Path{};
      const bool a_param = j.contains("a_parameter") && j.at("a_parameter").is_boolean() && j.at("a_parameter").get<bool>();
      return Family::fiber(base, excluded, tail).with_a_parameter(a_param);
    }
    if (kind == "chain") {
      const Json& from = j.contains("from") ? j.at("from") : Json(0);
      if (!from.is_number_unsigned()) bad("'from' must be a non-negative integer");
      return Family::chain(valuation_from_json(field(j, "valuation")), from.get<std::size_t>());
    }
    if (kind == "siblings") {
      Rational offset(1);
      if (j.contains("offset")) offset = parse_rational(text_of(j.at("offset"), "offset"));
      return Family::siblings(valuation_from_json(field(j, "valuation")), offset);
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    bad("bad " + kind + " family: " + e.what());
  }
  bad("unknown family kind '" + kind + "'");
}

Json family_set_to_json(const FamilySet& set) {
  Json out = Json::array();
  for (const auto& f : set) out.push_back(family_to_json(f));
  return out;
}

FamilySet family_set_from_json(const Json& j) {
  if (j.is_object()) return {family_from_json(j)};
  if (!j.is_array()) bad("a family set is an array of parts");
  FamilySet out;
  for (const auto& part : j) out.push_back(family_from_json(part));
  return out;
}

Json generator_to_json(const Generator& g) {
  if (const auto* p = std::get_if<Point>(&g)) return {{"kind", "point"}, {"point", path_to_json(p->path())}};
  return {{"kind", "valuation"}, {"valuation", valuation_to_json(std::get<ValuationDescriptor>(g))}};
}

Json to_json(const Resolution& r) {
  Json generic = Json::array();
  for (const auto& g : r.generic)
    generic.push_back({{"base", path_to_json(g.base.path())}, {"excluded", path_to_json(g.excluded)}, {"tag", to_string(g.tag)}});
  return {{"zeros", points_to_json(r.zeros)}, {"poles", points_to_json(r.poles)}, {"generic", generic},
          {"diagnostics", r.diagnostics}, {"depth_used", r.depth_used}};
}

Json to_json(const MembershipAnswer& a) {
  Json out{{"verdict", to_string(a.verdict)}, {"stabilized", a.stabilized}, {"notes", a.notes}};
  if (a.witness) out["witness"] = path_to_json(a.witness->path());
  if (a.witness_a) out["witness_a"] = to_string(*a.witness_a);
  if (!a.stabilized) out["verified_depth"] = a.verified_depth;
  Json ex = Json::array();
  for (const auto& e : a.exceptions) {
    Json item{{"a", to_string(e.a)}, {"verdict", e.verdict}};
    if (e.witness) item["witness"] = path_to_json(e.witness->path());
    ex.push_back(item);
  }
  out["exceptions"] = ex;
  return out;
}

Json to_json(const IrredundanceResult& r) {
  Json out{{"certified", r.certificate.has_value()}, {"obstructions", r.obstructions}};
  if (r.certificate) {
    out["member"] = path_to_json(r.certificate->member.path());
    out["valuation"] = valuation_to_json(r.certificate->valuation);
    out["uniqueness_domain"] = r.certificate->uniqueness_domain;
  }
  return out;
}

Json to_json(const NoetherianCertificate& c) {
  Json out{{"noetherian", c.verdict}, {"covering", valuations_to_json(c.covering)}};
  if (c.witness) out["witness"] = family_to_json(*c.witness);
  if (!c.reason.empty()) out["reason"] = c.reason;
  return out;
}

Json to_json(const ClosedSetRepr& c) {
  return {{"point_downsets", points_to_json(c.point_downsets)},
          {"divisor_downsets", valuations_to_json(c.divisor_downsets)},
          {"minimal_downsets", valuations_to_json(c.minimal_downsets)},
          {"residual", family_set_to_json(c.residual)}};
}

Json to_json(const DemoReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    Json item{{"claim", c.claim}, {"passed", c.passed}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    claims.push_back(item);
  }
  return {{"demo", r.name}, {"passed", r.passed()}, {"claims", claims}};
}

std::string export_dot(const FamilySet& set, const DotOptions& options) {
  const std::vector<Point> members = enumerate_members(set, options.alphabet, options.max_level);
  std::set<Point> nodes{Point()};
  for (const auto& m : members) {
    for (std::size_t l = 0; l <= m.level(); ++l) {
      nodes.insert(m.prefix(l));
      if (nodes.size() > options.node_cap)
        throw ComputationError("enumeration exceeds the node cap of " + std::to_string(options.node_cap));
    }
  }
  std::map<Point, std::size_t> id;
  for (const auto& n : nodes) id.emplace(n, id.size());
  const std::set<Point> highlighted(members.begin(), members.end());

  std::ostringstream out;
  out << "digraph qtree {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& [p, i] : id) {
    out << "  n" << i << " [label=\"" << dot_escape(p.to_string()) << "\\nlevel " << p.level() << "\"";
    if (highlighted.count(p)) out << ", style=filled, fillcolor=lightblue";
    out << "];\n";
  }
  for (const auto& [p, i] : id) {
    if (p.is_root()) continue;
    out << "  n" << id.at(p.parent()) << " -> n" << i << " [label=\"" << dot_escape(p.path().back().to_string()) << "\"];\n";
  }
  for (const auto& [p, i] : id) {
    if (p.level() < 2) continue;
    for (const auto& anc : proximate_ancestors(p)) {
      if (anc == p.parent() || !id.count(anc)) continue;
      out << "  n" << i << " -> n" << id.at(anc) << " [style=dashed, color=gray, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace qtree
