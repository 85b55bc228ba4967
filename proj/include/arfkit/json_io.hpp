#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "arfkit/criteria.hpp"

namespace arfkit {

using json = nlohmann::json;

// Runtime choice of coefficient field.
using AnyField = std::variant<PrimeField, RationalField>;

inline AnyField parse_field(const json& j) {
  require(j.is_object() && j.contains("kind"), ErrorKind::configuration, "field must be an object with a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "prime") {
    require(j.contains("p") && j.at("p").is_number_integer(), ErrorKind::configuration, "prime field needs an integer \"p\"");
    return PrimeField(j.at("p").get<std::uint32_t>());
  }
  if (kind == "rational") return RationalField{};
  fail(ErrorKind::configuration, "unknown field kind '" + kind + "'");
}

inline json field_to_json(const PrimeField& k) { return {{"kind", "prime"}, {"p", *k.order()}}; }
inline json field_to_json(const RationalField&) { return {{"kind", "rational"}}; }

// Integers, or strings "a" / "a/b".
template <ExactField K>
typename K::value_type coeff_from_json(const K& k, const json& j) {
  if (j.is_number_integer()) return k.from_int(j.get<long long>());
  require(j.is_string(), ErrorKind::configuration, "coefficient must be an integer or a string, got " + j.dump());
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const long long num = std::stoll(s.substr(0, slash), &used);
    require(used == (slash == std::string::npos ? s.size() : slash), ErrorKind::configuration, "bad coefficient '" + s + "'");
    if (slash == std::string::npos) return k.from_int(num);
    const long long den = std::stoll(s.substr(slash + 1), &used);
    require(used == s.size() - slash - 1, ErrorKind::configuration, "bad coefficient '" + s + "'");
    require(den != 0, ErrorKind::configuration, "zero denominator in '" + s + "'");
    return k.mul(k.from_int(num), k.inv(k.from_int(den)));
  } catch (const std::logic_error&) {
    fail(ErrorKind::configuration, "bad coefficient '" + s + "'");
  }
}

template <ExactField K>
json coeff_to_json(const K& k, const typename K::value_type& x) {
  if (k.order()) return std::stoll(k.format(x));
  return k.format(x);
}

template <ExactField K>
Vec<K> coeffs_from_json(const K& k, const json& j) {
  require(j.is_array(), ErrorKind::configuration, "coefficient list must be an array, got " + j.dump());
  Vec<K> out;
  for (const auto& c : j) out.push_back(coeff_from_json(k, c));
  return out;
}

// Per-branch coefficient lists, lowest degree first, trailing zeros dropped.
template <ExactField K>
json element_to_json(const BranchElement<K>& x) {
  json out = json::array();
  for (const auto& c : x.components()) {
    std::size_t len = c.truncation();
    while (len > 0 && x.field().is_zero(c.coeff(len - 1))) --len;
    json b = json::array();
    for (std::size_t j = 0; j < len; ++j) b.push_back(coeff_to_json(x.field(), c.coeff(j)));
    out.push_back(std::move(b));
  }
  return out;
}

// Per-branch coefficient lists; each branch is padded with zeros to at least precision[i].
template <ExactField K>
BranchElement<K> element_from_json(const K& k, const json& j, const Levels& precision) {
  require(j.is_array() && j.size() == precision.size(), ErrorKind::configuration,
          "element must list one coefficient array per branch, got " + j.dump());
  std::vector<TruncSeries<K>> comps;
  for (std::size_t i = 0; i < precision.size(); ++i) {
    Vec<K> c = coeffs_from_json(k, j[i]);
    const std::size_t t = std::max<std::size_t>({c.size(), static_cast<std::size_t>(std::max(precision[i], 1))});
    comps.emplace_back(k, std::move(c), t);
  }
  return BranchElement<K>(k, std::move(comps));
}

template <ExactField K>
json flat_to_json(const K& k, const Vec<K>& v, const Levels& lv) {
  return element_to_json(BranchElement<K>::from_flat(k, v, lv));
}

inline json levels_to_json(const Levels& l) { return json(l); }

inline Levels levels_from_json(const json& j) {
  require(j.is_array(), ErrorKind::configuration, "expected an integer array, got " + j.dump());
  Levels out;
  for (const auto& x : j) {
    require(x.is_number_integer(), ErrorKind::configuration, "expected an integer array, got " + j.dump());
    out.push_back(x.get<int>());
  }
  return out;
}

// A lattice as its canonical level and reduced basis, rows as elements.
template <ExactField K>
json lattice_to_json(const Lattice<K>& l) {
  const Lattice<K> c = l.canonical();
  json rows = json::array();
  for (const auto& r : c.rows()) rows.push_back(flat_to_json(c.field(), r, c.level()));
  return {{"depth", c.level()}, {"basis", rows}, {"profile", c.profile()}};
}

template <ExactField K>
json ring_to_json(const BranchAlgebra<K>& a) {
  json out = lattice_to_json(a.lattice());
  out.erase("depth");
  out.erase("profile");
  out["branches"] = a.branches();
  out["conductor"] = a.conductor();
  out["codimension"] = a.codimension();
  out["local"] = a.is_local();
  out["residue_classes"] = a.residue_classes();
  out["normal"] = a.is_normalization();
  return out;
}

template <ExactField K>
BranchAlgebra<K> build_ring(const K& k, const json& spec, const Settings& s);

namespace detail {

template <ExactField K>
std::vector<ModuleGenerator<K>> module_generators_from_json(const K& k, const json& gens, int rank) {
  require(gens.is_array(), ErrorKind::configuration, "\"generators\" must be an array");
  std::vector<ModuleGenerator<K>> out;
  for (const auto& g : gens) {
    // rank 1 generators may be written as a bare list of per-branch lists
    const json entries = rank == 1 && g.is_array() && !g.empty() && g[0].is_array() && (g[0].empty() || !g[0][0].is_array())
                             ? json::array({g})
                             : g;
    ModuleGenerator<K> mg;
    for (const auto& e : entries) {
      std::vector<Vec<K>> per_branch;
      for (const auto& b : e) per_branch.push_back(coeffs_from_json(k, b));
      mg.push_back(std::move(per_branch));
    }
    out.push_back(std::move(mg));
  }
  return out;
}

}  // namespace detail

// {"rank": r, "generators": [...]} or {"kind": "normalization", "rank": r}.
template <ExactField K>
FractionalModule<K> module_from_json(const BranchAlgebra<K>& a, const json& j) {
  require(j.is_object(), ErrorKind::configuration, "module spec must be an object");
  const int rank = j.value("rank", 1);
  if (j.value("kind", std::string("generated")) == "normalization") return FractionalModule<K>::free_normalization(a, rank);
  require(j.contains("generators"), ErrorKind::configuration, "module spec needs \"generators\"");
  return FractionalModule<K>::from_generators(a, rank, detail::module_generators_from_json(a.field(), j.at("generators"), rank));
}

// {"v": [...]} for I_v, or {"generators": [per-branch lists, ...]} for the ideal they generate.
template <ExactField K>
Lattice<K> ideal_from_json(const BranchAlgebra<K>& a, const json& j) {
  require(j.is_object(), ErrorKind::configuration, "ideal spec must be an object");
  if (j.contains("v")) {
    const Levels v = levels_from_json(j.at("v"));
    require(v.size() == a.branches(), ErrorKind::configuration, "ideal valuation vector has the wrong length");
    return closure_lattice(a, v);
  }
  require(j.contains("generators"), ErrorKind::configuration, "ideal spec needs \"v\" or \"generators\"");
  const auto m = module_from_json(a, json{{"rank", 1}, {"generators", j.at("generators")}});
  require(a.lattice().includes(m.lattice()), ErrorKind::domain, "ideal generators do not lie in the ring");
  return m.lattice();
}

template <ExactField K>
BranchAlgebra<K> build_ring(const K& k, const json& spec, const Settings& s) {
  require(spec.is_object(), ErrorKind::configuration, "ring spec must be an object");
  if (spec.contains("field")) {
    const AnyField f = parse_field(spec.at("field"));
    require(std::holds_alternative<K>(f) && std::get<K>(f) == k, ErrorKind::configuration,
            "nested ring spec uses a different field");
  }
  require(spec.contains("construction"), ErrorKind::configuration, "ring spec needs a \"construction\"");
  const json& c = spec.at("construction");
  require(c.is_object() && c.contains("kind"), ErrorKind::configuration, "construction needs a \"kind\"");
  const std::string kind = c.at("kind").get<std::string>();
  std::optional<BranchAlgebra<K>> out;
  if (kind == "semigroup") {
    std::vector<int> gens;
    for (const auto& g : c.at("gens")) gens.push_back(g.get<int>());
    out = semigroup_ring(k, NumericalSemigroup::from_generators(gens), s);
  } else if (kind == "normalization") {
    out = BranchAlgebra<K>::normalization(k, c.value("branches", std::size_t{1}), s);
  } else if (kind == "gluing") {
    out = gluing_ring(k, levels_from_json(c.at("j")), s);
  } else if (kind == "lines") {
    std::vector<std::pair<typename K::value_type, typename K::value_type>> dirs;
    for (const auto& d : c.at("dirs")) {
      require(d.is_array() && d.size() == 2, ErrorKind::configuration, "line direction must be a pair");
      dirs.emplace_back(coeff_from_json(k, d[0]), coeff_from_json(k, d[1]));
    }
    out = lines_ring(k, dirs, s);
  } else if (kind == "core") {
    std::vector<Vec<K>> polys;
    for (const auto& g : c.at("gens")) polys.push_back(coeffs_from_json(k, g.is_object() ? g.at("coeffs") : g));
    out = core_ring(k, polys, c.at("tail_degree").get<int>(), s);
  } else if (kind == "parametrized") {
    std::vector<std::vector<Vec<K>>> gens;
    for (const auto& g : c.at("gens")) {
      std::vector<Vec<K>> per_branch;
      for (const auto& b : g) per_branch.push_back(coeffs_from_json(k, b));
      gens.push_back(std::move(per_branch));
    }
    out = parametrized_ring(k, gens, s);
  } else if (kind == "product" || kind == "fiber_product") {
    const BranchAlgebra<K> l = build_ring(k, c.at("left"), s), r = build_ring(k, c.at("right"), s);
    out = kind == "product" ? product_ring(l, r) : fiber_product_ring(l, r);
  } else if (kind == "duplication") {
    const BranchAlgebra<K> l = build_ring(k, c.at("left"), s);
    out = duplication_ring(l, ideal_from_json(l, c.at("right")));
  } else {
    fail(ErrorKind::configuration, "unknown construction kind '" + kind + "'");
  }
  if (spec.contains("truncation_override")) {
    const Levels t = levels_from_json(spec.at("truncation_override"));
    out = BranchAlgebra<K>::from_lattice(out->lattice(), s, t);
  }
  for (int c : out->conductor())
    require(c <= s.caps.degree, ErrorKind::resource_cap, "conductor exponent " + std::to_string(c) + " exceeds the degree cap");
  return *out;
}

// Calls f(field) with the concrete field named by the spec.
template <class F>
decltype(auto) with_field(const json& spec, F&& f) {
  require(spec.is_object() && spec.contains("field"), ErrorKind::configuration, "ring spec needs a \"field\"");
  return std::visit([&](const auto& k) -> decltype(auto) { return f(k); }, parse_field(spec.at("field")));
}

}  // namespace arfkit
