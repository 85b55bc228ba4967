#include <gtest/gtest.h>

#include <cstdlib>

#include "arfkit/report.hpp"
#include "helpers.hpp"

using namespace arfkit;
using namespace testing_support;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST(Coefficients, IntegersAndFractions) {
  const PrimeField f7(7);
  EXPECT_EQ(coeff_from_json(f7, json(9)), 2u);
  EXPECT_EQ(coeff_from_json(f7, json(-1)), 6u);
  EXPECT_EQ(coeff_from_json(f7, json("1/2")), 4u);
  EXPECT_EQ(coeff_from_json(f7, json("-3")), 4u);
  const RationalField q;
  EXPECT_EQ(coeff_from_json(q, json("-3/6")), RationalField::value_type(-1, 2));
  EXPECT_EQ(coeff_to_json(q, RationalField::value_type(5, 3)), json("5/3"));
  EXPECT_EQ(coeff_to_json(f7, 3u), json(3));
}

TEST(Coefficients, Rejected) {
  const RationalField q;
  for (const json& bad : {json("1/0"), json("x"), json("1/2/3"), json(1.5), json::array()})
    EXPECT_EQ(kind_of([&] { coeff_from_json(q, bad); }), ErrorKind::configuration) << bad.dump();
}

TEST(Specs, FieldErrors) {
  EXPECT_EQ(kind_of([] { parse_field(json{{"kind", "real"}}); }), ErrorKind::configuration);
  EXPECT_EQ(kind_of([] { parse_field(json{{"kind", "prime"}}); }), ErrorKind::configuration);
  EXPECT_THROW(parse_field(json{{"kind", "prime"}, {"p", 4}}), Error);
  EXPECT_TRUE(std::holds_alternative<RationalField>(parse_field(json{{"kind", "rational"}})));
}

TEST(Specs, ConstructionErrors) {
  const PrimeField f2(2);
  const json no_kind = {{"field", {{"kind", "prime"}, {"p", 2}}}, {"construction", json::object()}};
  EXPECT_THROW(ring_from(f2, no_kind), Error);
  EXPECT_EQ(kind_of([&] { ring_from(f2, semigroup_spec({4, 6})); }), ErrorKind::not_a_numerical_semigroup);
  const json line_twice = {{"field", {{"kind", "prime"}, {"p", 2}}},
                           {"construction", {{"kind", "parametrized"}, {"gens", {{{0, 1}, {0, 1}}}}}}};
  EXPECT_THROW(ring_from(f2, line_twice), Error);
}

TEST(Specs, RoundTripThroughRingJson) {
  const auto a = ring_from(PrimeField(2), fixtures::three_lines_spec());
  const json j = ring_to_json(a);
  EXPECT_EQ(j.at("conductor"), json({2, 2, 2}));
  EXPECT_EQ(j.at("codimension"), 3);
  EXPECT_EQ(j.dump(), ring_to_json(ring_from(PrimeField(2), fixtures::three_lines_spec(), 2)).dump());
}

TEST(Caps, Parsing) {
  const Caps c = parse_caps("degree=7,bruteforce=12");
  EXPECT_EQ(c.degree, 7);
  EXPECT_EQ(c.bruteforce, 12u);
  EXPECT_EQ(c.torus_enumeration, Caps{}.torus_enumeration);
  EXPECT_EQ(parse_caps("", c).degree, 7);
  for (const char* bad : {"degree", "degree=x", "speed=3", "torus=-1", "chains=4k"})
    EXPECT_EQ(kind_of([&] { parse_caps(bad); }), ErrorKind::configuration) << bad;
}

TEST(Caps, Environment) {
  ::setenv("ARFKIT_CAPS", "chains=3", 1);
  EXPECT_EQ(caps_from_environment().chain_paths, 3u);
  ::unsetenv("ARFKIT_CAPS");
  EXPECT_EQ(caps_from_environment().chain_paths, Caps{}.chain_paths);
}

TEST(Caps, DegreeCapStopsConstruction) {
  Settings s;
  s.caps.degree = 3;
  EXPECT_EQ(kind_of([&] { build_ring(PrimeField(2), semigroup_spec({4, 5, 6}), s); }), ErrorKind::resource_cap);
  s.caps.degree = 8;
  EXPECT_NO_THROW(build_ring(PrimeField(2), semigroup_spec({4, 5, 6}), s));
}

TEST(Report, HashAndLayout) {
  EXPECT_EQ(fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64("a"), "af63dc4c8601ec8c");
  const json inputs = {{"b", 1}, {"a", {1, 2}}};
  const json r = make_report({"x", "y"}, inputs, {{"v", true}});
  EXPECT_EQ(r.at("input_hash"), fnv1a64(R"({"a":[1,2],"b":1})"));
  EXPECT_EQ(r.at("engine_version"), engine_version);
  EXPECT_EQ(render_text(r), "command: [\"x\",\"y\"]\nengine_version: \"1.0.0\"\ninput_hash: \"" + fnv1a64(inputs.dump()) +
                                "\"\ninputs.a: [1,2]\ninputs.b: 1\nresult.v: true\n");
}
