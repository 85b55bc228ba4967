#pragma once

#include "arfkit/corpus.hpp"
#include "oracle.hpp"

namespace testing_support {

using namespace arfkit;

// Independent reconstruction of a prime-field ring spec from its generators.
inline oracle::Ring oracle_ring(const json& spec, int depth = 12) {
  const int p = spec.at("field").at("p").get<int>();
  const json& c = spec.at("construction");
  const std::string kind = c.at("kind");
  std::vector<std::vector<oracle::V>> gens;
  oracle::Lv T;
  if (kind == "parametrized") {
    for (const auto& g : c.at("gens")) gens.push_back(g.get<std::vector<oracle::V>>());
    T.assign(gens.front().size(), depth);
  } else if (kind == "lines") {
    oracle::V x, y;
    for (const auto& d : c.at("dirs")) {
      x.push_back(d[0].get<int>());
      y.push_back(d[1].get<int>());
    }
    std::vector<oracle::V> gx, gy;
    for (std::size_t i = 0; i < x.size(); ++i) {
      gx.push_back({0, x[i]});
      gy.push_back({0, y[i]});
    }
    gens = {gx, gy};
    T.assign(x.size(), depth);
  } else if (kind == "semigroup") {
    const auto g = c.at("gens").get<std::vector<int>>();
    const auto h = NumericalSemigroup::from_generators(g);
    T = {2 * h.conductor() + 2};
    for (int x : g) {
      oracle::V m(x + 1, 0);
      m[x] = 1;
      gens.push_back({m});
    }
  } else if (kind == "core") {
    const int tail = c.at("tail_degree").get<int>();
    T = {2 * tail + 2};
    for (const auto& g : c.at("gens")) gens.push_back({(g.is_object() ? g.at("coeffs") : g).get<oracle::V>()});
    for (int d = tail; d < T[0]; ++d) {
      oracle::V m(d + 1, 0);
      m[d] = 1;
      gens.push_back({m});
    }
  } else {
    throw std::runtime_error("oracle_ring: unsupported kind " + kind);
  }
  return oracle::ring_from_generators(p, gens, T);
}

// An element given as per-branch coefficient lists, modulo t^lv.
inline oracle::V flat(const std::vector<oracle::V>& per_branch, const oracle::Lv& lv, int p) {
  oracle::V v(oracle::sum(lv), 0);
  const auto off = oracle::offsets(lv);
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (std::size_t d = 0; d < per_branch[i].size() && static_cast<int>(d) < lv[i]; ++d) v[off[i] + d] = oracle::mod(per_branch[i][d], p);
  return v;
}

// Ideal of A generated by the given elements, modulo t^c; `closes` tells whether it contains the conductor.
struct GeneratedIdeal {
  oracle::Space space;
  bool contains_conductor = false;
};
inline GeneratedIdeal generated_ideal(const oracle::Ring& a, const std::vector<std::vector<oracle::V>>& gens) {
  oracle::Lv T(a.c.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = 2 * a.c[i] + 2;
  const oracle::Space big = oracle::at_level(a, T);
  oracle::Space ideal(a.p, oracle::sum(T));
  for (const auto& g : gens)
    for (const auto& r : big.rows) ideal.insert(oracle::mul(flat(g, T, a.p), r, T, a.p));
  GeneratedIdeal out{oracle::Space(a.p, oracle::sum(a.c)), true};
  for (std::size_t i = 0; i < T.size(); ++i)
    for (int d = a.c[i]; d < T[i]; ++d) out.contains_conductor = out.contains_conductor && ideal.contains(oracle::monomial(T, i, d));
  for (const auto& r : ideal.rows) out.space.insert(oracle::resize(r, T, a.c));
  return out;
}

template <class K>
BranchAlgebra<K> ring_from(const K& k, const json& spec, int extra = 0) {
  Settings s;
  s.extra_truncation = extra;
  return build_ring(k, spec, s);
}

inline json spec_of(const std::string& id) {
  const auto all = registry();
  return find_fixture(all, id).spec;
}

inline json semigroup_spec(std::vector<int> gens, int p = 2) {
  return {{"field", {{"kind", "prime"}, {"p", p}}}, {"construction", {{"kind", "semigroup"}, {"gens", gens}}}};
}

}  // namespace testing_support
