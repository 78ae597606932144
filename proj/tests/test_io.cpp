#include "qtree/io.hpp"

#include "support.hpp"

#include <regex>

using namespace qtree;
using namespace qtree::testing;

namespace {

const Step kInf = Step::infinity();
Step st(long v) { return Step(Rational(v)); }

std::size_t count(const std::string& text, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}
std::size_t node_count(const std::string& dot) { return count(dot, std::regex(R"(\n  n\d+ \[label)")); }
std::size_t filled_count(const std::string& dot) { return count(dot, std::regex("style=filled")); }
std::size_t tree_edge_count(const std::string& dot) { return count(dot, std::regex(R"(-> n\d+ \[label)")); }

Family random_family(std::mt19937_64& rng) {
  const auto alphabet = steps_of({"-1", "0", "1/2", "3", "inf"});
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Family::singleton(Point::from_path(random_path(rng, alphabet, 4)));
    case 1: {
      std::vector<Step> ex;
      for (const auto& s : alphabet)
        if (rng() % 3 == 0) ex.push_back(s);
      return Family::fiber(Point::from_path(random_path(rng, alphabet, 3)), ex, random_path(rng, alphabet, 2))
          .with_a_parameter(rng() % 2 == 0);
    }
    case 2: {
      auto v = rng() % 2 ? ValuationDescriptor::eventually_periodic(random_path(rng, alphabet, 2), {st(0)})
                         : ValuationDescriptor::curve_branch(poly("y^2 - x^3"));
      return Family::chain(v, rng() % 4);
    }
    default: {
      auto v = ValuationDescriptor::eventually_periodic(random_path(rng, alphabet, 2), {alphabet[rng() % alphabet.size()]});
      return Family::siblings(v, Rational(static_cast<long>(rng() % 5) + 1));
    }
  }
}

}  // namespace

TEST_CASE("path json") {
  CHECK(path_to_json(parse_path("[0, inf, -1/2]")).dump() == R"(["0","inf","-1/2"])");
  CHECK(path_from_json(Json::parse(R"(["0","inf","-1/2"])")) == parse_path("[0, inf, -1/2]"));
  CHECK(path_from_json(Json("[inf, 3]")) == parse_path("[inf, 3]"));
  CHECK(path_from_json(Json::parse("[1, 2]")) == parse_path("[1, 2]"));
  CHECK_THROWS_AS(path_from_json(Json::parse(R"(["zero"])")), FormatError);
  CHECK_THROWS_AS(path_from_json(Json::parse("{}")), FormatError);
}

TEST_CASE("valuation json") {
  for (const auto& v : {ValuationDescriptor::first_kind(poly("y - x")), ValuationDescriptor::second_kind(at("[inf, 2]")),
                        ValuationDescriptor::eventually_periodic(parse_path("[1]"), parse_path("[0]")),
                        ValuationDescriptor::curve_branch(poly("x^2 - y^3"))}) {
    CHECK(valuation_from_json(valuation_to_json(v)) == v);
    CHECK(valuation_from_json(Json::parse(valuation_to_json(v).dump())) == v);
  }
  CHECK(valuation_to_json(ValuationDescriptor::second_kind(at("[0]"))).dump() == R"({"kind":"second","point":["0"]})");
  CHECK(valuation_to_json(ValuationDescriptor::first_kind(poly("x^2 - y^3"))).dump() == R"({"h":"y^3 - x^2","kind":"first"})");
  CHECK(valuation_from_json(Json::parse(R"({"kind":"monomial","a":2,"b":3})")) == ValuationDescriptor::monomial(2, 3));
  CHECK_THROWS_AS(valuation_from_json(Json::parse(R"({"kind":"monomial","a":0,"b":3})")), FormatError);
  CHECK_THROWS_AS(valuation_from_json(Json::parse(R"({"kind":"minimal","prefix":[],"period":[]})")), FormatError);
  CHECK_THROWS_AS(valuation_from_json(Json::parse(R"({"kind":"third_kind"})")), FormatError);
}

TEST_CASE("family json") {
  const Family f = family_from_json(Json::parse(R"({"kind":"fiber","base":[],"excluded":["0"],"tail":["inf"],"a_parameter":true})"));
  CHECK(f.kind() == Family::Kind::fiber);
  CHECK(f.excluded() == std::vector<Step>{st(0)});
  CHECK(f.tail() == Path{kInf});
  CHECK(f.a_parameter());
  const FamilySet set = family_set_from_json(Json::parse(
      R"([{"kind":"singleton","point":["inf","inf"]},
          {"kind":"chain","valuation":{"kind":"minimal","prefix":[],"period":["0"]},"from":1},
          {"kind":"siblings","valuation":{"kind":"curve","h":"x^2 - y^3"},"offset":"1"}])"));
  REQUIRE(set.size() == 3);
  CHECK(set[0].point() == at("[inf, inf]"));
  CHECK(set[1].from_level() == 1);
  CHECK(set[2].offset() == 1);
  CHECK_THROWS_AS(family_from_json(Json::parse(R"({"kind":"siblings","valuation":{"kind":"second","point":[]}})")), FormatError);
  CHECK_THROWS_AS(family_from_json(Json::parse(R"({"kind":"siblings","valuation":{"kind":"curve","h":"y"},"offset":"0"})")),
                  FormatError);
  CHECK_THROWS_AS(family_from_json(Json::parse(R"({"kind":"fiber"})")), FormatError);
  CHECK_THROWS_AS(family_set_from_json(Json::parse("3")), FormatError);
}

TEST_CASE("family json round trip") {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 300; ++trial) {
    const Family f = random_family(rng);
    const Json j = family_to_json(f);
    CHECK(family_from_json(Json::parse(j.dump())) == f);
    CHECK(family_to_json(family_from_json(j)) == j);
  }
}

TEST_CASE("report json") {
  const Json m = to_json(in_family(rf("y/x"), {Family::fiber(Point(), {}, {kInf})}));
  CHECK(m["verdict"] == "no");
  CHECK(m["witness"] == Json::parse(R"(["inf","inf"])"));
  const Json r = to_json(resolve(rf("x*y/(y^2 + x^3)"), 8));
  CHECK(r["poles"] == Json::parse(R"([["0","inf"]])"));
  const Json d = to_json(run_demo("example-6-11"));
  CHECK(d["passed"] == true);
  CHECK(d["claims"].size() >= 3);
  const Json n = to_json(is_noetherian({Family::fiber(Point(), {}, {st(1)})}));
  CHECK(n["noetherian"] == false);
  CHECK(n.contains("witness"));
}

TEST_CASE("dot export counts") {
  const std::string fiber = export_dot({Family::fiber(Point(), {}, {kInf})}, {steps_of({"-1", "0", "1", "inf"}), 2});
  CHECK(node_count(fiber) == 9);
  CHECK(filled_count(fiber) == 4);
  CHECK(tree_edge_count(fiber) == 8);
  for (const char* leaf : {"[-1, inf]", "[0, inf]", "[1, inf]", "[inf, inf]"}) CHECK(fiber.find(leaf) != std::string::npos);

  const auto ray = ValuationDescriptor::eventually_periodic({}, {st(0)});
  const std::string sib = export_dot({Family::siblings(ray, 1)}, {{}, 5});
  CHECK(node_count(sib) == 9);
  CHECK(filled_count(sib) == 4);
  for (const char* p : {"[0]", "[0, 0]", "[0, 0, 0]", "[0, 0, 0, 0]", "[0, 1]", "[0, 0, 0, 0, 1]"}) CHECK(sib.find(p) != std::string::npos);

  const std::string empty = export_dot({}, {{}, 0});
  CHECK(node_count(empty) == 1);
  CHECK(filled_count(empty) == 0);

  CHECK_THROWS_AS(export_dot({Family::fiber(Point(), {}, {kInf})}, {steps_of({"-1", "0", "1", "inf"}), 2, 5}), ComputationError);
  CHECK(export_dot({Family::singleton(at("[2]"))}, {{}, 3}) == export_dot({Family::singleton(at("[2]"))}, {{}, 3}));
}

TEST_CASE("dot proximity edges") {
  // [inf, inf] lies on the strict transform of the first exceptional divisor; [inf, 1] does not
  const std::string dot = export_dot({Family::singleton(at("[inf, inf]")), Family::singleton(at("[inf, 1]"))}, {{}, 3});
  CHECK(count(dot, std::regex("style=dashed")) == 1);
  CHECK(dot.find("n3 -> n0 [style=dashed") != std::string::npos);
}
