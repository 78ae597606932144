// Command-line front end for the quadratic tree engine.

#include "qtree/io.hpp"
#include "qtree/proximity.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qtree;

namespace {

// Bad input discovered after option parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  Json json;
  std::string text;
  int code = 0;
};

struct Options {
  std::string f, g, h, elt, point, of, family, member, candidates, target, gens, steps = "-1,0,1,inf", dot_file, demo;
  std::size_t max_depth = 0, levels = 3, node_cap = 2000;
  bool json = false, list = false;
};

RatFunc read_expression(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("--") + flag + " is required");
  return parse_expression(text);
}

RatFunc read_quotient(const Options& o) {
  RatFunc f = read_expression(o.f, "f");
  if (!o.g.empty()) f = f / parse_expression(o.g);
  return f;
}

Point read_point(const std::string& text, const char* flag = "point") {
  if (text.empty()) throw UsageError(std::string("--") + flag + " is required");
  return Point::from_path(parse_path(text));
}

std::vector<Step> read_steps(const std::string& csv) {
  std::vector<Step> out;
  std::stringstream in(csv);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(Step::parse(item));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FamilySet read_family(const std::string& arg) {
  if (arg.empty()) throw UsageError("--family is required");
  Json j;
  try {
    if (arg.front() == '[' || arg.front() == '{') {
      j = Json::parse(arg);
    } else {
      std::ifstream in(arg);
      if (!in) throw UsageError("cannot open family file '" + arg + "'");
      j = Json::parse(in);
    }
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("family is not valid JSON: ") + e.what());
  }
  return family_set_from_json(j);
}

ExponentVector read_exponent(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("exponent vector '" + text + "' must be 'a,b'");
  try {
    return {std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("exponent vector '" + text + "' must be two integers");
  }
}

std::string lines(const std::vector<Point>& points) {
  std::string out;
  for (const auto& p : points) out += "  " + p.to_string() + "\n";
  return out.empty() ? "  (none)\n" : out;
}

Json points_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(path_to_json(p.path()));
  return out;
}

Json parametric_json(const ParametricPosition& pp) {
  Json out;
  if (pp.degenerate) {
    out["degenerate"] = *pp.degenerate;
  } else {
    out["generic"] = to_string(pp.generic);
  }
  Json cases = Json::array();
  for (const auto& c : pp.cases) cases.push_back({{"condition", c.condition}, {"result", parametric_json(c.result)}});
  out["cases"] = cases;
  if (!pp.unresolved.empty()) out["unresolved"] = pp.unresolved;
  return out;
}

void parametric_text(const ParametricPosition& pp, int indent, std::string& out) {
  out += pp.degenerate ? *pp.degenerate : to_string(pp.generic);
  out += "\n";
  for (const auto& c : pp.cases) {
    out += std::string(indent + 2, ' ') + "if " + c.condition + ": ";
    parametric_text(c.result, indent + 2, out);
  }
}

Output cmd_position(const Options& o) {
  const RatFunc f = read_quotient(o);
  const Point p = read_point(o.point);
  if (f.depends_on(kVarA)) {
    const ParametricPosition pp = position_parametric(p, f);
    std::string text = "position at " + p.to_string() + ": ";
    parametric_text(pp, 0, text);
    return {parametric_json(pp), text};
  }
  const Position pos = position(p, f);
  const RatFunc e = express(p, f);
  Json j{{"point", path_to_json(p.path())}, {"position", to_string(pos)}, {"expressed", e.to_string(p.names())},
         {"parameters", {p.first_parameter().to_string(), p.second_parameter().to_string()}}};
  std::string text = "position at " + p.to_string() + ": " + to_string(pos) + "\nexpressed: " + e.to_string(p.names()) + "\n";
  if (pos != Position::undetermined) {
    j["ord"] = ord(p, f);
    text += "ord: " + std::to_string(ord(p, f)) + "\n";
  }
  return {j, text};
}

Output cmd_resolve(const Options& o) {
  const Resolution r = resolve(read_quotient(o), o.max_depth ? static_cast<int>(o.max_depth) : 16);
  std::string text = "zeros:\n" + lines(r.zeros) + "poles:\n" + lines(r.poles);
  for (const auto& g : r.generic) text += "generic " + to_string(g.tag) + " fiber over " + g.base.to_string() + " except " + to_string(g.excluded) + "\n";
  for (const auto& d : r.diagnostics) text += "note: " + d + "\n";
  return {to_json(r), text};
}

Output cmd_prox(const Options& o) {
  const Point beta = read_point(o.point);
  if (!o.of.empty()) {
    const Point alpha = read_point(o.of, "of");
    const bool prox = is_proximate(beta, alpha);
    Json j{{"point", path_to_json(beta.path())}, {"of", path_to_json(alpha.path())}, {"proximate", prox}};
    std::string text = beta.to_string() + (prox ? " is" : " is not") + " proximate to " + alpha.to_string() + "\n";
    if (const auto rf = ray_form(beta, alpha)) {
      j["ray"] = {{"child", rf->base_child_step.to_string()}, {"extension", rf->extension_count}};
      text += "ray: child " + rf->base_child_step.to_string() + ", " + std::to_string(rf->extension_count) + " further steps\n";
    }
    return {j, text};
  }
  const auto pts = proximate_points(beta, beta.level() + o.levels, read_steps(o.steps));
  return {{{"point", path_to_json(beta.path())}, {"proximate", points_json(pts)}},
          "points proximate to " + beta.to_string() + ":\n" + lines(pts)};
}

Output cmd_ancestors(const Options& o) {
  const Point p = read_point(o.point);
  if (p.is_root()) throw UsageError("the root has no proximate ancestors");
  auto anc = proximate_ancestors(p);
  std::sort(anc.begin(), anc.end());
  return {{{"point", path_to_json(p.path())}, {"ancestors", points_json(anc)}}, p.to_string() + " is proximate to:\n" + lines(anc)};
}

Output cmd_strict(const Options& o) {
  const std::string& text = o.h.empty() ? o.f : o.h;
  if (text.empty()) throw UsageError("--h is required");
  const Poly h = parse_poly(text);
  const Point p = read_point(o.point);
  const std::string s = strict_transform(h, p).to_string(p.names());
  return {{{"point", path_to_json(p.path())}, {"strict_transform", s}}, "strict transform at " + p.to_string() + ": " + s + "\n"};
}

std::string valuations_text(const std::vector<ValuationDescriptor>& vs) {
  std::string out;
  for (const auto& v : vs) out += "  " + v.to_string() + "\n";
  return out.empty() ? "  (none)\n" : out;
}

Output cmd_limits(const Options& o) {
  const auto limits = patch_limit_points(read_family(o.family));
  Json arr = Json::array();
  for (const auto& v : limits) arr.push_back(valuation_to_json(v));
  return {{{"limits", arr}}, "patch limit points:\n" + valuations_text(limits)};
}

Output cmd_closure(const Options& o) {
  const ClosedSetRepr c = zariski_closure(read_family(o.family));
  Json j = to_json(c);
  std::string text = "closure = downset of the family together with\n" + valuations_text(c.divisor_downsets) + valuations_text(c.minimal_downsets);
  if (!o.member.empty()) {
    const Point p = read_point(o.member, "member");
    const bool in = closure_member(c, p);
    j["member"] = {{"point", path_to_json(p.path())}, {"in_closure", in}};
    text += p.to_string() + (in ? " lies" : " does not lie") + " in the closure\n";
  }
  return {j, text};
}

Output cmd_noetherian(const Options& o) {
  const auto cert = is_noetherian(read_family(o.family));
  std::string text = std::string("noetherian: ") + (cert.verdict ? "yes" : "no") + "\n";
  if (cert.verdict) text += "covering:\n" + valuations_text(cert.covering);
  if (cert.witness) text += "witness: " + cert.witness->to_string() + "\nreason: " + cert.reason + "\n";
  return {to_json(cert), text};
}

Output cmd_components(const Options& o) {
  const auto comps = irreducible_components(zariski_closure(read_family(o.family)));
  Json arr = Json::array();
  std::string text = "irreducible components:\n";
  for (const auto& g : comps) {
    arr.push_back(generator_to_json(g));
    text += "  " + to_string(g) + "\n";
  }
  return {{{"components", arr}}, text};
}

Output cmd_member(const Options& o) {
  const RatFunc f = read_expression(o.elt, "elt");
  const auto ans = in_family(f, read_family(o.family), o.max_depth ? o.max_depth : kChainDepth);
  std::string text = "verdict: " + to_string(ans.verdict) + "\n";
  if (ans.witness) text += "witness: " + ans.witness->to_string() + (ans.witness_a ? " at a = " + to_string(*ans.witness_a) : "") + "\n";
  for (const auto& e : ans.exceptions)
    text += "exception a = " + to_string(e.a) + ": " + e.verdict + (e.witness ? " at " + e.witness->to_string() : "") + "\n";
  for (const auto& n : ans.notes) text += "note: " + n + "\n";
  return {to_json(ans), text};
}

Output cmd_irredundant(const Options& o) {
  const FamilySet set = read_family(o.family);
  const Point delta = read_point(o.member, "member");
  std::vector<Poly> candidates;
  std::stringstream in(o.candidates);
  for (std::string item; std::getline(in, item, ',');) candidates.push_back(parse_poly(item));
  if (candidates.empty()) throw UsageError("--candidates is required");
  const auto res = irredundance_certificate(set, delta, candidates, o.max_depth ? o.max_depth : kChainDepth);
  std::string text;
  if (res.certificate) {
    text = "certified: " + delta.to_string() + " by " + res.certificate->valuation.to_string() + "\n";
    for (const auto& l : res.certificate->uniqueness_domain) text += "  " + l + "\n";
  } else {
    text = "no certificate\n";
  }
  for (const auto& ob : res.obstructions) text += "rejected: " + ob + "\n";
  return {to_json(res), text, res.certificate ? 0 : 3};
}

Output cmd_semigroup(const Options& o) {
  if (o.target.empty() || o.gens.empty()) throw UsageError("--target and --gens are required");
  const ExponentVector target = read_exponent(o.target);
  std::vector<ExponentVector> gens;
  std::stringstream in(o.gens);
  for (std::string item; std::getline(in, item, ';');) gens.push_back(read_exponent(item));
  const bool yes = semigroup_member(target, gens);
  Json g = Json::array();
  for (const auto& [a, b] : gens) g.push_back({a, b});
  return {{{"target", {target.first, target.second}}, {"generators", g}, {"member", yes}},
          std::string("(") + std::to_string(target.first) + ", " + std::to_string(target.second) + ")" + (yes ? " is" : " is not") +
              " in the semigroup\n"};
}

Output cmd_demo(const Options& o) {
  if (o.list || o.demo.empty()) {
    std::string text;
    for (const auto& n : demo_names()) text += n + "\n";
    return {{{"demos", demo_names()}}, text};
  }
  DemoReport r;
  try {
    r = run_demo(o.demo);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string text = r.name + ": " + (r.passed() ? "PASS" : "FAIL") + "\n";
  for (const auto& c : r.claims) text += std::string("  [") + (c.passed ? "ok" : "FAIL") + "] " + c.claim + (c.detail.empty() ? "" : " (" + c.detail + ")") + "\n";
  return {to_json(r), text, r.passed() ? 0 : 1};
}

Output cmd_dot(const Options& o) {
  const std::string dot = export_dot(read_family(o.family), {read_steps(o.steps), o.max_depth ? o.max_depth : 3, o.node_cap});
  if (!o.dot_file.empty()) {
    std::ofstream out(o.dot_file);
    if (!out) throw UsageError("cannot write '" + o.dot_file + "'");
    out << dot;
    return {{{"written", o.dot_file}}, "wrote " + o.dot_file + "\n"};
  }
  return {{{"dot", dot}}, dot};
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the quadratic tree of k[x,y] localized at (x,y)"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit JSON instead of text");

  std::map<CLI::App*, std::function<Output(const Options&)>> handlers;
  const auto sub = [&](const char* name, const char* desc, std::function<Output(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_flag("--json", o.json, "Emit JSON instead of text");
    handlers.emplace(s, std::move(fn));
    return s;
  };
  const auto expr = [&](CLI::App* s) {
    s->add_option("--f", o.f, "Rational function in x, y (and a)");
    s->add_option("--g", o.g, "Optional denominator: the input is f/g");
  };

  auto* s = sub("position", "Position of f at a point", cmd_position);
  expr(s);
  s->add_option("--point", o.point, "Path such as \"[0, inf]\"");
  s = sub("resolve", "Distinguished zeros and poles of f", cmd_resolve);
  expr(s);
  s->add_option("--max-depth", o.max_depth, "Depth cap (default 16)");
  s = sub("prox", "Proximity: points proximate to --point, or whether --point is proximate to --of", cmd_prox);
  s->add_option("--point", o.point, "Path");
  s->add_option("--of", o.of, "Candidate proximate ancestor");
  s->add_option("--levels", o.levels, "Levels below --point to enumerate (default 3)");
  s->add_option("--steps", o.steps, "Comma-separated first steps (default -1,0,1,inf)");
  s = sub("ancestors", "Points that --point is proximate to", cmd_ancestors);
  s->add_option("--point", o.point, "Path");
  s = sub("strict", "Strict transform of a curve at a point", cmd_strict);
  s->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  s->add_option("--h,--f", o.h, "Polynomial in x, y");
  s->add_option("--point", o.point, "Path");
  for (auto [name, desc, fn] : {std::tuple{"limits", "Patch limit points of a family", cmd_limits},
                                std::tuple{"noetherian", "Noetherian certificate of a family", cmd_noetherian},
                                std::tuple{"components", "Irreducible components of the closure", cmd_components}}) {
    s = sub(name, desc, fn);
    s->add_option("--family", o.family, "Family JSON file, or inline JSON");
  }
  s = sub("closure", "Zariski closure of a family", cmd_closure);
  s->add_option("--family", o.family, "Family JSON file, or inline JSON");
  s->add_option("--member", o.member, "Test this path for membership in the closure");
  s = sub("member", "Membership of an element in the intersection of a family", cmd_member);
  s->add_option("--elt", o.elt, "Rational function, may involve a");
  s->add_option("--family", o.family, "Family JSON file, or inline JSON");
  s->add_option("--max-depth", o.max_depth, "Depth for chains and siblings (default 12)");
  s = sub("irredundant", "Irredundance certificate for a member", cmd_irredundant);
  s->add_option("--family", o.family, "Family JSON file, or inline JSON");
  s->add_option("--member", o.member, "Path of the member");
  s->add_option("--candidates", o.candidates, "Comma-separated curves, e.g. \"y-2*x,x-3*y^2\"");
  s->add_option("--max-depth", o.max_depth, "Depth for chains and siblings (default 12)");
  s = sub("semigroup", "Monomial membership in a monomial semigroup", cmd_semigroup);
  s->add_option("--target", o.target, "Exponent vector \"a,b\"");
  s->add_option("--gens", o.gens, "Generators \"a,b;c,d;...\"");
  s = sub("demo", "Run a worked example", cmd_demo);
  s->add_option("name", o.demo, "Demo name");
  s->add_flag("--list", o.list, "List demos");
  s = sub("dot", "Graphviz export of a family's tree fragment", cmd_dot);
  s->add_option("--family", o.family, "Family JSON file, or inline JSON");
  s->add_option("--steps", o.steps, "Comma-separated step alphabet (default -1,0,1,inf)");
  s->add_option("--max-depth", o.max_depth, "Level bound (default 3)");
  s->add_option("--node-cap", o.node_cap, "Maximum number of nodes (default 2000)");
  s->add_option("--dot", o.dot_file, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    for (const auto& [cmd, fn] : handlers) {
      if (!cmd->parsed()) continue;
      const Output out = fn(o);
      std::cout << (o.json ? out.json.dump(2) + "\n" : out.text);
      return out.code;
    }
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const ParseError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const FormatError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const ComputationError& e) {
    print_error("computation", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("computation", e.what());
    return 3;
  }
  return 2;
}
