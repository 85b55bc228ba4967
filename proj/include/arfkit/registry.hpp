#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arfkit/json_io.hpp"

namespace arfkit {

struct Assertion {
  std::string name;
  json expected;
  json actual;
  bool pass = false;
};

struct FixtureResult {
  std::string id;
  std::vector<Assertion> assertions;
  json details = json::object();

  bool pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  void check(const std::string& name, const json& expected, const json& actual) {
    assertions.push_back({name, expected, actual, expected == actual});
  }

  json to_json() const {
    json as = json::array();
    for (const auto& a : assertions)
      as.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
    return {{"id", id}, {"assertions", as}, {"details", details}, {"pass", pass()}};
  }
};

struct Fixture {
  std::string id;
  std::string summary;
  json spec;  // ring spec of the fixture ring
  std::function<FixtureResult(const Fixture&, const Settings&)> run;
};

namespace fixtures {

inline json f2() { return {{"kind", "prime"}, {"p", 2}}; }

inline json three_lines_spec() {
  return {{"field", f2()}, {"construction", {{"kind", "lines"}, {"dirs", {{0, 1}, {1, 0}, {1, 1}}}}}};
}

inline json core_spec(int l) {
  std::vector<int> poly(static_cast<std::size_t>(l + 2), 0);
  poly[static_cast<std::size_t>(l)] = poly[static_cast<std::size_t>(l + 1)] = 1;
  return {{"field", f2()}, {"construction", {{"kind", "core"}, {"gens", {{{"coeffs", poly}}}}, {"tail_degree", l + 2}}}};
}

template <ExactField K>
BranchAlgebra<K> ring_of(const Fixture& f, const Settings& s) {
  return std::visit(
      [&](const auto& k) -> BranchAlgebra<K> {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, K>) return build_ring(k, f.spec, s);
        else fail(ErrorKind::internal, "fixture field mismatch");
      },
      parse_field(f.spec.at("field")));
}

template <ExactField K>
BranchElement<K> elem(const BranchAlgebra<K>& a, const json& lists) {
  return element_from_json(a.field(), lists, a.truncation());
}

template <ExactField K>
Lattice<K> ideal(const BranchAlgebra<K>& a, const json& gens) {
  return ideal_from_json(a, json{{"generators", gens}});
}

template <ExactField K>
json lambda_json(const BranchAlgebra<K>& a, const std::vector<OpenIdeal<K>>& ids) {
  json out = json::array();
  for (const auto& id : ids)
    out.push_back({{"v", id.requested}, {"mu", mu(a, id.lattice)}, {"realizer", element_to_json(*id.realizer)}});
  return out;
}

template <ExactField K>
json strict_paths_json(const StrictClosure<K>& sc) {
  json out = json::object();
  for (const auto& [name, ring] : sc.paths) out[name] = ring_to_json(ring);
  return out;
}

inline FixtureResult ex3_7(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const NumericalSemigroup h = NumericalSemigroup::from_generators({4, 5, 6});
  const auto a = ring_of<PrimeField>(f, s);
  const auto wa = is_weakly_arf(a);
  r.check("semigroup is Arf", false, is_arf_semigroup(h));
  r.check("weakly Arf", false, wa.holds);
  r.check("unstable member v", json({4}), wa.witness_v ? json(*wa.witness_v) : json());
  const auto t4 = elem(a, json{{0, 0, 0, 0, 1}});
  const auto m = a.radical();
  r.check("m^3 = t^4 m^2", true, ideal_power(a, m, 3) == times_element(a, ideal_power(a, m, 2), t4));
  r.check("m^2 = t^4 m", false, ideal_product(a, m, m) == times_element(a, m, t4));
  const auto ar = is_arf(a);
  r.check("every integrally closed open ideal has a principal reduction", true, !ar.unreduced_v.has_value());
  r.check("Arf", false, ar.holds);
  const auto li = local_invariants(a);
  r.check("multiplicity", 4, li.multiplicity);
  r.check("embedding dimension", 3, li.embedding_dimension);
  r.details["lambda"] = lambda_json(a, lambda(a));
  return r;
}

inline FixtureResult ex8_1(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  r.check("t^2 in R", false, a.contains(elem(a, json{{0, 0, 1}})));
  json vs = json::array();
  for (const auto& v : value_set(a)) vs.push_back(v[0]);
  r.check("values up to the conductor", json({0, 2, 4}), vs);
  const auto h = semigroup_ring(a.field(), NumericalSemigroup::from_generators({2, 5}), a.settings());
  r.check("R equals the semigroup ring of its value semigroup", false, a == h);
  const auto aa = weakly_arf_closure(a).terminal;
  const auto sc = strict_closure(a);
  r.check("weakly Arf closure equals strict closure", true, aa == sc.ring);
  r.check("strict closure paths agree", true, sc.agree);
  return r;
}

inline FixtureResult ex9_6(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  // x = (0,t,t), y = (t,0,t)
  const json x = {{0}, {0, 1}, {0, 1}}, y = {{0, 1}, {0}, {0, 1}};
  const json x2 = {{0}, {0, 0, 1}, {0, 0, 1}}, y2 = {{0, 0, 1}, {0}, {0, 0, 1}};
  const json xpy = {{0, 1}, {0, 1}, {0}}, xy = {{0}, {0}, {0, 0, 1}};
  r.check("conductor", json({2, 2, 2}), a.conductor());
  const auto i1 = ideal(a, json{x, y2}), i2 = ideal(a, json{x2, y}), i3 = ideal(a, json{xpy, xy});
  const auto ml = lambda_max(a);
  bool exact = ml.size() == 3;
  for (const auto* want : {&i1, &i2, &i3}) {
    bool found = false;
    for (const auto& m : ml) found = found || m.lattice == *want;
    exact = exact && found;
  }
  r.check("Max Lambda = {(x,y^2), (x^2,y), (x+y,xy)}", true, exact);
  r.check("weakly Arf", true, is_weakly_arf(a).holds);
  r.check("Arf", false, is_arf(a).holds);
  r.check("m has a principal reduction", false, has_principal_reduction(a, a.radical()));
  r.check("(1,1,1) realizable", false, principal_closure(a, {1, 1, 1}).realizable);
  for (const Levels& v : {Levels{2, 1, 1}, Levels{1, 2, 1}, Levels{1, 1, 2}})
    r.check(format_levels(v) + " realizable", true, principal_closure(a, v).realizable);
  r.check("I_1^2 = (x+y^2) I_1", true, ideal_product(a, i1, i1) == times_element(a, i1, elem(a, json{{0, 0, 1}, {0, 1}, {0, 1, 1}})));
  r.check("I_3^2 = (x+y+xy) I_3", true, ideal_product(a, i3, i3) == times_element(a, i3, elem(a, json{{0, 1}, {0, 1}, {0, 0, 1}})));
  r.check("mu(I_1)", 2, mu(a, i1));
  r.check("m^2 = conductor", true, ideal_product(a, a.radical(), a.radical()) == Lattice<PrimeField>::tail(a.field(), a.conductor()));
  r.details["max_lambda"] = lambda_json(a, ml);
  return r;
}

inline FixtureResult thm10_4(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  const Lattice<PrimeField>& m = a.radical();
  json sweep = json::array();
  bool all = true;
  int count = 0;
  for_each_in_box(Levels{1, 1, 1}, [&](const Levels& d) {
    const Levels v = zip_add(d, Levels{1, 1, 1});
    const Lattice<PrimeField> i = closure_lattice(a, v);
    if (i == m) return;
    ++count;
    const auto st = is_stable(a, i);
    all = all && st.stable;
    sweep.push_back({{"v", v}, {"stable", st.stable}, {"witness", st.witness ? element_to_json(*st.witness) : json()}});
  });
  r.check("every I_v != m with 1 <= v <= (2,2,2) is stable", true, all);
  r.details["sweep"] = sweep;
  r.details["swept"] = count;
  return r;
}

inline FixtureResult ex10_3(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  r.check("transversality hypotheses", true, thm_10_1_hypotheses(a).holds);
  const auto sc = strict_closure(a);
  json paths = json::array();
  for (const auto& p : sc.paths) paths.push_back(p.first);
  r.check("paths", json({"formula", "search"}), paths);
  r.check("paths agree", true, sc.agree);
  r.check("strict closure = k + t(normalization)", true, sc.ring == gluing_ring(a.field(), Levels{1, 1, 1}, a.settings()));
  r.check("strict closure is Arf", true, is_arf(sc.ring).holds);
  r.check("A = A*", false, sc.ring == a);
  r.details["paths"] = strict_paths_json(sc);
  return r;
}

inline FixtureResult cor10_5(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  const auto li = local_invariants(a);
  r.check("multiplicity", 3, li.multiplicity);
  r.check("embedding dimension", 2, li.embedding_dimension);
  r.check("minimal multiplicity", false, li.minimal_multiplicity);
  r.check("weakly Arf", true, is_weakly_arf(a).holds);
  r.check("Arf", false, is_arf(a).holds);
  return r;
}

inline FixtureResult cor10_6(const Fixture& f, const Settings& s, bool expect_weakly_arf) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  const auto wa = is_weakly_arf(a);
  r.check("weakly Arf", expect_weakly_arf, wa.holds);
  if (!expect_weakly_arf) {
    r.check("unstable member reported", true, wa.witness_v.has_value());
    if (wa.witness_v) {
      const auto i = closure_lattice(a, *wa.witness_v);
      r.check("witness lies in Lambda", true, principal_closure(a, *wa.witness_v).realizable);
      r.check("witness is unstable", false, is_stable(a, i).stable);
      r.details["witness_v"] = *wa.witness_v;
      r.details["witness_element"] = element_to_json(*wa.witness_element);
    }
    // y = (0,t,t,t) and z = (t^3,0,0,0) on the lines Y = 0, X = 0, X + Y = 0, X + 2Y = 0.
    const auto i = ideal(a, json{{{0}, {0, 1}, {0, 1}, {0, 1}}, {{0, 0, 0, 1}, {0}, {0}, {0}}});
    r.check("(y,z) is the closure of (y+z)", true, i == closure_lattice(a, Levels{3, 1, 1, 1}));
    r.check("(y,z) is stable", true, is_stable(a, i).stable);
    r.check("(y,z):(y,z) weakly Arf", false, is_weakly_arf(ideal_colon_endo(a, i)).holds);
  }
  return r;
}

inline FixtureResult ex9_15(const Fixture& f, const Settings& s, int l) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  bool none = true;
  for (int q = 1; q <= l + 1; ++q) {
    json mono = json::array({json(std::vector<int>(static_cast<std::size_t>(q + 1), 0))});
    mono[0][static_cast<std::size_t>(q)] = 1;
    none = none && !a.contains(elem(a, mono));
  }
  r.check("t^q not in R for 1 <= q <= l+1", true, none);
  r.check("conductor exponent", l + 2, a.conductor()[0]);
  const auto tail = Lattice<PrimeField>::tail(a.field(), a.conductor());
  r.check("mu(t^(l+2) S) > 1", true, mu(a, tail) > 1);
  const auto explicit_chain = chain_def_9_9(a, ChainStrategy::lex_first, std::optional<Lattice<PrimeField>>(tail));
  r.check("blow-up at t^(l+2) S is S", true, explicit_chain.front().steps.size() == 1 && blowup(a, tail).ring.is_normalization());
  const auto lex = chain_def_9_9(a, ChainStrategy::lex_first).front();
  const auto t23 = semigroup_ring(a.field(), NumericalSemigroup::from_generators({2, 3}), a.settings());
  const auto aclosure = closure_lattice(a, Levels{l});
  r.check("closure of (t^l + t^(l+1)) is the first lex choice", true, lex.steps.front().ideal == aclosure);
  r.check("mu(closure of (t^l + t^(l+1))) > 1", true, mu(a, aclosure) > 1);
  r.check("blow-up at the closure of (t^l + t^(l+1)) is k[t^2,t^3]", true, lex.steps.size() >= 2 && lex.steps[1].ring == t23);
  r.check("lex chain length", 2, static_cast<int>(lex.steps.size()));
  r.check("weakly Arf", true, is_weakly_arf(a).holds);
  r.check("strictly closed", true, strict_closure(a).ring == a);
  return r;
}

inline FixtureResult thm_ch(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<PrimeField>(f, s);
  r.check("conductor", json({1, 1, 1}), a.conductor());
  r.check("Arf", true, is_arf(a).holds);
  const auto m = a.radical();
  const auto m2 = ideal_product(a, m, m);
  bool same = true;
  for (const json& g : {json{{0, 1}, {0, 1}, {0, 1}}, json{{0, 1}, {0, 2}, {0, 4}}, json{{0, 1}, {0, 4}, {0, 2}}})
    same = same && times_element(a, m, elem(a, g)) == m2;
  r.check("m^2 = xm = ym = zm", true, same);
  r.check("m has a principal reduction", true, has_principal_reduction(a, m));
  r.check("(1,1,1) realizable", true, principal_closure(a, {1, 1, 1}).realizable);
  r.check("blow-up of m is the normalization", true, blowup(a, m).ring.is_normalization());
  r.check("multiplicity", 3, local_invariants(a).multiplicity);
  r.check("minimal multiplicity", true, local_invariants(a).minimal_multiplicity);
  return r;
}

template <ExactField K>
FixtureResult strictly_closed(const Fixture& f, const Settings& s) {
  FixtureResult r{f.id, {}, {}};
  const auto a = ring_of<K>(f, s);
  const auto sc = strict_closure(a);
  r.check("strictly closed", true, sc.ring == a);
  r.check("strict closure paths agree", true, sc.agree);
  r.check("Arf", true, is_arf(a).holds);
  r.check("weakly Arf", true, is_weakly_arf(a).holds);
  r.details["conductor"] = a.conductor();
  r.details["paths"] = strict_paths_json(sc);
  return r;
}

}  // namespace fixtures

inline std::vector<Fixture> registry() {
  using namespace fixtures;
  const json f3 = {{"kind", "prime"}, {"p", 3}}, f7 = {{"kind", "prime"}, {"p", 7}};
  std::vector<Fixture> out;
  out.push_back({"cor10.5", "three lines over F_2: weakly Arf, not Arf, e = 3, mu(m) = 2", three_lines_spec(), cor10_5});
  out.push_back({"cor10.6-q2", "all F_2-rational lines through the origin: weakly Arf", three_lines_spec(),
                 [](const Fixture& f, const Settings& s) { return cor10_6(f, s, true); }});
  out.push_back({"cor10.6-q3", "all F_3-rational lines through the origin: not weakly Arf",
                 {{"field", f3}, {"construction", {{"kind", "lines"}, {"dirs", {{1, 0}, {0, 1}, {2, 1}, {1, 1}}}}}},
                 [](const Fixture& f, const Settings& s) { return cor10_6(f, s, false); }});
  out.push_back({"ex10.3", "three lines over F_2: strict closure k + m(normalization)", three_lines_spec(), ex10_3});
  out.push_back({"ex3.7", "k[[t^4,t^5,t^6]]: not weakly Arf", {{"field", f2()}, {"construction", {{"kind", "semigroup"}, {"gens", {4, 5, 6}}}}}, ex3_7});
  out.push_back({"ex8.1", "k[t^2+t^3] + t^4 S: not a semigroup ring, weakly Arf closure = strict closure", core_spec(2), ex8_1});
  out.push_back({"ex9.15-l2", "k[t^2+t^3] + t^4 S: chains of blow-ups", core_spec(2),
                 [](const Fixture& f, const Settings& s) { return ex9_15(f, s, 2); }});
  out.push_back({"ex9.15-l3", "k[t^3+t^4] + t^5 S: chains of blow-ups", core_spec(3),
                 [](const Fixture& f, const Settings& s) { return ex9_15(f, s, 3); }});
  out.push_back({"ex9.6", "three lines over F_2: Max Lambda, weakly Arf, not Arf", three_lines_spec(), ex9_6});
  out.push_back({"prop15.2", "branches (t,0), (0,t^2), (0,t^3) over Q: strictly closed",
                 {{"field", {{"kind", "rational"}}},
                  {"construction", {{"kind", "parametrized"}, {"gens", {{{0, 1}, {0}}, {{0}, {0, 0, 1}}, {{0}, {0, 0, 0, 1}}}}}}},
                 strictly_closed<RationalField>});
  out.push_back({"sec11-RH", "invariant ring k[x, xy+y^2, xy^2+y^3] over F_2: strictly closed",
                 {{"field", f2()},
                  {"construction", {{"kind", "parametrized"}, {"gens", {{{0}, {0, 1}}, {{0, 0, 1}, {0}}, {{0, 0, 0, 1}, {0}}}}}}},
                 strictly_closed<PrimeField>});
  out.push_back({"thm-ch-f7", "x = (t,t,t), y = (t,2t,4t), z = (t,4t,2t) over F_7: Arf",
                 {{"field", f7},
                  {"construction", {{"kind", "parametrized"}, {"gens", {{{0, 1}, {0, 1}, {0, 1}}, {{0, 1}, {0, 2}, {0, 4}}, {{0, 1}, {0, 4}, {0, 2}}}}}}},
                 thm_ch});
  out.push_back({"thm10.4-sweep", "three lines over F_2: integrally closed ideals below the conductor", three_lines_spec(), thm10_4});
  return out;
}

inline const Fixture& find_fixture(const std::vector<Fixture>& all, const std::string& id) {
  for (const auto& f : all)
    if (f.id == id) return f;
  fail(ErrorKind::configuration, "unknown example '" + id + "'");
}

}  // namespace arfkit
