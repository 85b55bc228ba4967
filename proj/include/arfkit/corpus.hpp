#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "arfkit/registry.hpp"

namespace arfkit {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Random subalgebra of k[[t]]^n containing t^level: 1 plus a few random elements, closed under products.
template <ExactField K>
BranchAlgebra<K> random_ring(const K& k, std::mt19937_64& rng, std::size_t branches, int level, int extra_gens,
                             Settings s = {}) {
  const Levels lv(branches, level);
  std::uniform_int_distribution<std::uint64_t> coin(0, *k.order() - 1);
  std::vector<Vec<K>> gens;
  for (int g = 0; g < extra_gens; ++g) {
    Vec<K> v(static_cast<std::size_t>(total(lv)));
    for (auto& x : v) x = k.element(coin(rng));
    gens.push_back(std::move(v));
  }
  Subspace<K> base(k, static_cast<std::size_t>(total(lv)));
  base.insert(one_flat(k, lv));
  for (const auto& g : gens) base.insert(g);
  return BranchAlgebra<K>::from_lattice(Lattice<K>(k, lv, saturate_products(k, lv, base, gens)), s);
}

// At least `count` distinct non-normal random rings over F_2 with 2 or 3 branches and conductor <= 3.
inline std::vector<BranchAlgebra<PrimeField>> random_f2_rings(std::size_t count, std::uint64_t seed, Settings s = {}) {
  const PrimeField k(2);
  std::mt19937_64 rng(seed);
  std::vector<BranchAlgebra<PrimeField>> out;
  while (out.size() < count) {
    const std::size_t n = 2 + rng() % 2;
    const int level = 2 + static_cast<int>(rng() % 2);
    auto a = random_ring(k, rng, n, level, 1 + static_cast<int>(rng() % 2), s);
    if (a.is_normalization()) continue;
    bool dup = false;
    for (const auto& b : out) dup = dup || (b.branches() == a.branches() && b == a);
    if (!dup) out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<int> value_semigroup_window(const std::vector<Levels>& values) {
  std::vector<int> out;
  for (const auto& v : values) out.push_back(v[0]);
  return out;
}

namespace detail {

struct Recorder {
  std::vector<PropertyResult>& out;
  bool stop;
  bool stopped = false;

  PropertyResult& get(const std::string& name) {
    for (auto& p : out)
      if (p.name == name) return p;
    out.push_back({name, 0, {}});
    return out.back();
  }
  void record(const std::string& name, bool ok, const std::string& where) {
    auto& p = get(name);
    ++p.cases;
    if (!ok) {
      p.failures.push_back(where);
      if (stop) stopped = true;
    }
  }
};

template <ExactField K>
Lattice<K> shift_by(const BranchAlgebra<K>& a, const Lattice<K>& l, const Levels& d) {
  std::vector<Vec<K>> parts;
  Levels p(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) p[i] = d[i] + 1;
  const Vec<K> tau = [&] {
    Vec<K> v(static_cast<std::size_t>(total(p)), a.field().zero());
    const auto off = offsets_of(p);
    for (std::size_t i = 0; i < d.size(); ++i) v[off[i] + static_cast<std::size_t>(d[i])] = a.field().one();
    return v;
  }();
  return lattice_times(l, tau, p, a.truncation()).canonical();
}

template <ExactField K>
void ring_properties(Recorder& rec, const std::string& tag, const BranchAlgebra<K>& a, std::mt19937_64& rng) {
  const auto wa = is_weakly_arf(a);
  const auto ar = is_arf(a);
  if (a.field().order()) {
    try {
      rec.record("weakly Arf: Lambda test = direct oracle", wa.holds == is_weakly_arf_bruteforce(a).holds, tag);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::resource_cap) throw;
    }
  }
  const auto chain = weakly_arf_closure(a);
  const BranchAlgebra<K>& aa = chain.terminal;
  rec.record("weakly Arf input has an empty closure chain", !wa.holds || chain.steps.empty(), tag);
  rec.record("A^a is weakly Arf", is_weakly_arf(aa).holds, tag);
  rec.record("(A^a)^a = A^a", weakly_arf_closure(aa).terminal == aa, tag);
  std::optional<StrictClosure<K>> sc;
  try {
    sc = strict_closure(a);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::resource_cap) throw;
  }
  const auto normal = BranchAlgebra<K>::normalization(a.field(), a.branches());
  if (sc) {
    rec.record("strict closure paths agree", sc->agree, tag);
    rec.record("A ⊆ A^a ⊆ A* ⊆ normalization", aa.includes(a) && sc->ring.includes(aa) && normal.includes(sc->ring), tag);
    rec.record("A* is Arf", is_arf(sc->ring).holds, tag);
    rec.record("A is Arf iff A = A*", ar.holds == (sc->ring == a), tag);
    const auto hyp = thm_10_1_hypotheses(a);
    if (hyp.holds) {
      const Lattice<K> ext = Lattice<K>::tail(a.field(), a.radical().profile());
      rec.record("transversal branches: A = A* iff m(normalization) = m", (sc->ring == a) == (ext == a.radical()), tag);
      rec.record("transversal branches: A* = k + m(normalization)", sc->ring == residue_plus_extended_maximal(a), tag);
    }
  }
  const auto audit = thm_9_11_audit(a);
  rec.record("equivalent conditions for weakly Arf agree", audit.violations.empty(), tag);
  // Truncation escalation.
  Settings up = a.settings();
  up.extra_truncation += 2;
  const BranchAlgebra<K> b = a.with_settings(up);
  rec.record("verdicts invariant under T -> T+2",
             is_weakly_arf(b).holds == wa.holds && is_arf(b).holds == ar.holds && weakly_arf_closure(b).terminal == aa, tag);
  // Deep-coordinate reduction.
  const Levels& c = a.conductor();
  for (int trial = 0; trial < 3; ++trial) {
    Levels v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(c[i] + 3));
    const std::size_t deep = rng() % c.size();
    v[deep] = std::max(v[deep], c[deep] + 1 + static_cast<int>(rng() % 2));
    const Levels low = zip_min(v, c);
    rec.record("deep coordinates shift I_v", closure_lattice(a, v) == shift_by(a, closure_lattice(a, low), zip_sub(v, low)), tag);
  }
  // Blow-up fixed point, and I A^I stable in A^I.
  for (const auto& id : lambda(a)) {
    const bool st = is_stable(a, id.lattice).stable;
    const auto bl = blowup(a, id.lattice);
    const bool fixed = bl.ring == ideal_colon_endo(a, id.lattice) && bl.reduction_number && *bl.reduction_number <= 1;
    rec.record("I stable iff the blow-up is I:I with reduction number <= 1", st == fixed, tag + " v=" + format_levels(id.requested));
    const Lattice<K> ext = ideal_product(bl.ring, bl.ring.lattice(), id.lattice);
    rec.record("I A^I is stable in A^I", is_stable(bl.ring, ext).stable, tag + " v=" + format_levels(id.requested));
  }
  // Stability transfer across a principal closure (b) = closure of (b).
  const auto lam = lambda(a);
  for (const auto& b : lam) {
    if (mu(a, b.lattice) != 1) continue;
    for (const auto& x : lam) {
      if (!leq(b.requested, x.requested) || &x == &b) continue;
      const Levels vc = zip_sub(x.requested, b.requested);
      const Lattice<K> ic = closure_lattice(a, vc);
      const bool shifted_ok = x.lattice == times_element(a, ic, *b.realizer);
      rec.record("principal (b): I_(v(b)+w) = b I_w and stability transfers",
                 shifted_ok && is_stable(a, x.lattice).stable == is_stable(a, ic).stable,
                 tag + " b=" + format_levels(b.requested) + " a=" + format_levels(x.requested));
    }
  }
}

}  // namespace detail

// Runs every invariant over the built-in corpus. With stop_on_failure the run ends after the
// first violated property.
inline std::vector<PropertyResult> run_corpus(const Settings& s, bool stop_on_failure = true,
                                              const std::function<void(const std::string&)>& progress = {}) {
  std::vector<PropertyResult> out;
  detail::Recorder rec{out, stop_on_failure};
  auto note = [&](const std::string& m) {
    if (progress) progress(m);
  };
  std::mt19937_64 rng(0x5eed2026ULL);

  note("exact kernel");
  for (const std::uint32_t p : {2u, 3u, 7u}) {
    const PrimeField k(p);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t t = 1 + rng() % 8;
      std::vector<PrimeField::value_type> c(t);
      for (auto& x : c) x = k.element(rng());
      if (c[0] == 0) c[0] = 1;
      const TruncSeries<PrimeField> a(k, c, t);
      rec.record("unit times inverse is 1", series_mul(a, series_invert_unit(a)) == TruncSeries<PrimeField>::monomial(k, 0, t), "F_" + std::to_string(p));
      const std::size_t dim = 1 + rng() % 6;
      auto random_rows = [&](std::size_t count) {
        std::vector<Vec<PrimeField>> rows(count, Vec<PrimeField>(dim));
        for (auto& r : rows)
          for (auto& x : r) x = k.element(rng());
        return rows;
      };
      const auto u = rref(k, dim, random_rows(rng() % 4)), v = rref(k, dim, random_rows(rng() % 4));
      rec.record("dim(U+V) + dim(U∩V) = dim U + dim V", sum(u, v).dim() + intersect(u, v).dim() == u.dim() + v.dim(), "F_" + std::to_string(p));
      rec.record("rref is canonical", rref(k, dim, u.basis()) == u && rref(k, dim, sum(u, v).basis()) == sum(v, u), "F_" + std::to_string(p));
    }
  }
  if (rec.stopped) return out;

  note("semigroups");
  for (const auto& h : semigroups_with_frobenius_at_most(15)) {
    const std::string tag = h.to_string();
    const auto cl = arf_closure_fixpoint(h);
    rec.record("Arf closure: fixpoint = multiplicity sequence", cl == arf_closure_multiplicity_sequence(h), tag);
    rec.record("Arf closure is idempotent", arf_closure_fixpoint(cl) == cl, tag);
    bool inside = true;
    for (int x = 0; x <= h.frobenius() + 1; ++x) inside = inside && (!h.contains(x) || cl.contains(x));
    rec.record("H ⊆ closure(H)", inside, tag);
    rec.record("closure(H) = H iff H is Arf", (cl == h) == is_arf_semigroup(h), tag);
    const auto bl = blowup_semigroup(h);
    bool shift = true;
    const int e = h.multiplicity();
    for (int x = e; x <= h.frobenius() + e + 1; ++x) shift = shift && (!h.contains(x) || bl.contains(x - e));
    rec.record("x in H, x >= e implies x - e in the blow-up", shift, tag);
    if (rec.stopped) return out;
  }

  note("fixtures");
  for (const auto& f : registry()) {
    for (int extra : {0, 2}) {
      Settings t = s;
      t.extra_truncation += extra;
      rec.record("fixture assertions hold", f.run(f, t).pass(), f.id + " +" + std::to_string(extra));
    }
    if (rec.stopped) return out;
  }

  note("ring corpus");
  std::vector<std::pair<std::string, BranchAlgebra<PrimeField>>> rings;
  for (const auto& f : registry()) {
    const auto field = parse_field(f.spec.at("field"));
    if (std::holds_alternative<PrimeField>(field)) rings.emplace_back(f.id, build_ring(std::get<PrimeField>(field), f.spec, s));
  }
  const PrimeField f2(2);
  const std::vector<std::vector<int>> small = {{2, 3}, {3, 4, 5}, {4, 5, 6}, {3, 4}, {2, 5}, {3, 5, 7}, {4, 6, 9}};
  for (const auto& g : small) {
    const auto h = NumericalSemigroup::from_generators(g);
    const auto a = semigroup_ring(f2, h, s);
    rings.emplace_back(h.to_string(), a);
    const auto vs = value_set(a);
    std::vector<int> expect;
    for (int x = 0; x <= h.conductor(); ++x)
      if (h.contains(x)) expect.push_back(x);
    rec.record("semigroup ring: value set = H up to c", value_semigroup_window(vs) == expect, h.to_string());
    const bool arf = is_arf_semigroup(h);
    rec.record("semigroup ring: weakly Arf = Arf = Arf semigroup", is_weakly_arf(a).holds == arf && is_arf(a).holds == arf, h.to_string());
    const auto aa = weakly_arf_closure(a).terminal;
    const auto cl = arf_closure_fixpoint(h);
    std::vector<int> got = value_semigroup_window(value_set(aa)), want;
    for (int x = 0; x <= aa.conductor()[0]; ++x)
      if (cl.contains(x)) want.push_back(x);
    rec.record("semigroup ring: values of A^a = Arf closure of H", got == want && cl.conductor() == aa.conductor()[0], h.to_string());
  }
  const auto randoms = random_f2_rings(24, 0xa11ce, s);
  for (std::size_t i = 0; i < randoms.size(); ++i) rings.emplace_back("random#" + std::to_string(i), randoms[i]);

  const std::vector<std::string> factor_names = {"<2,3>", "<3,4,5>", "<4,5,6>", "k[[t]]"};
  std::vector<BranchAlgebra<PrimeField>> factors;
  for (const auto& g : {std::vector<int>{2, 3}, {3, 4, 5}, {4, 5, 6}}) factors.push_back(semigroup_ring(f2, NumericalSemigroup::from_generators(g), s));
  factors.push_back(BranchAlgebra<PrimeField>::normalization(f2, 1, s));
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const std::string tag = factor_names[i] + " x " + factor_names[j];
      const auto p = product_ring(factors[i], factors[j]);
      rec.record("product is weakly Arf iff both factors are",
                 is_weakly_arf(p).holds == (is_weakly_arf(factors[i]).holds && is_weakly_arf(factors[j]).holds), tag);
      for (const ArfMode mode : {ArfMode::weakly_arf, ArfMode::arf})
        rec.record("fiber product: factor test = direct test", fiber_product_audit(factors[i], factors[j], mode).agree, tag + " " + to_string(mode));
      if (i == j) rec.record("self fiber product has the verdict of the factor",
                             is_weakly_arf(fiber_product_ring(factors[i], factors[i])).holds == is_weakly_arf(factors[i]).holds, tag);
      if (i <= j) rings.emplace_back("fiber " + tag, fiber_product_ring(factors[i], factors[j]));
    }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (const ArfMode mode : {ArfMode::weakly_arf, ArfMode::arf}) {
      const auto m = FractionalModule<PrimeField>::free_normalization(factors[i], 2);
      rec.record("idealization with free normalization module = ring test",
                 idealization_predicate(factors[i], m, mode).holds == mode_test(factors[i], mode), factor_names[i]);
    }
  if (rec.stopped) return out;

  for (const auto& [tag, a] : rings) {
    note(tag);
    detail::ring_properties(rec, tag, a, rng);
    if (rec.stopped) return out;
  }
  for (const auto& f : registry()) {
    const auto field = parse_field(f.spec.at("field"));
    if (!std::holds_alternative<RationalField>(field)) continue;
    note(f.id);
    detail::ring_properties(rec, f.id, build_ring(std::get<RationalField>(field), f.spec, s), rng);
    if (rec.stopped) return out;
  }
  return out;
}

}  // namespace arfkit
