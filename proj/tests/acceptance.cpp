// One PASS/FAIL line per acceptance criterion; exit status is nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>

#include "helpers.hpp"

using namespace arfkit;
using namespace testing_support;
using F = PrimeField;

namespace {

struct Check {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void criterion(int n, const std::string& label, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) c.failures.push_back("time limit exceeded");
  const bool ok = c.failures.empty();
  failed += !ok;
  std::printf("%s [%d] %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", n, label.c_str(), secs, limit_s);
  for (const auto& f : c.failures) std::printf("      %s\n", f.c_str());
  std::fflush(stdout);
}

void fixture_passes(Check& c, const std::string& id, int extra = 0) {
  const auto all = registry();
  const auto& f = find_fixture(all, id);
  Settings s;
  s.extra_truncation = extra;
  const auto r = f.run(f, s);
  for (const auto& a : r.assertions) c(a.pass, id + ": " + a.name + " expected " + a.expected.dump() + " got " + a.actual.dump());
}

BranchAlgebra<F> fixture_ring(const std::string& id, int extra = 0) {
  const json spec = spec_of(id);
  return ring_from(F(spec.at("field").at("p").get<std::uint32_t>()), spec, extra);
}

std::vector<std::pair<std::string, BranchAlgebra<F>>> corpus() {
  std::vector<std::pair<std::string, BranchAlgebra<F>>> out;
  for (const auto& f : registry())
    if (f.spec.at("field").at("kind") == "prime") out.emplace_back(f.id, fixture_ring(f.id));
  for (const auto& g : std::vector<std::vector<int>>{{2, 3}, {3, 4, 5}, {4, 5, 6}, {3, 4}, {2, 5}, {3, 5, 7}, {4, 6, 9}})
    out.emplace_back(NumericalSemigroup::from_generators(g).to_string(), ring_from(F(2), semigroup_spec(g)));
  const auto rs = random_f2_rings(24, 0xa11ce);
  for (std::size_t i = 0; i < rs.size(); ++i) out.emplace_back("random#" + std::to_string(i), rs[i]);
  return out;
}

oracle::Ring view(const BranchAlgebra<F>& b, const oracle::Ring& at) { return {at.p, at.c, oracle::lattice_space(b.lattice(), at.c)}; }

bool small_enough(const oracle::Ring& o) { return std::pow(o.p, oracle::sum(o.c)) <= 4096; }

oracle::sg::Bits bits(const NumericalSemigroup& h, int n) {
  oracle::sg::Bits b(n + 1);
  for (int x = 0; x <= n; ++x) b[x] = h.contains(x);
  return b;
}

}  // namespace

int main() {
  criterion(1, "three lines over F_2: Max Lambda, weakly Arf, not Arf, no principal reduction of m", 5, [](Check& c) {
    fixture_passes(c, "ex9.6");
    const auto a = fixture_ring("ex9.6");
    const auto o = oracle::from_library(a);
    const auto want = oracle::lambda_max(o);
    const auto got = lambda_max(a);
    c(want.size() == 3 && got.size() == 3, "Max Lambda has three members");
    for (const auto& m : got) {
      const auto s = oracle::lattice_space(m.lattice, o.c);
      c(std::any_of(want.begin(), want.end(), [&](const oracle::Space& w) { return w == s; }), "Max Lambda member matches enumeration");
    }
    c(oracle::is_weakly_arf(o), "oracle: weakly Arf");
    c(!oracle::is_arf(o), "oracle: not Arf");
    c(!oracle::stable_reduction(o, oracle::lattice_space(a.radical(), o.c)), "oracle: m has no principal reduction");
  });

  criterion(2, "three lines sweep: integrally closed I_v != m, 1 <= v <= (2,2,2), are stable", 10, [](Check& c) {
    fixture_passes(c, "thm10.4-sweep");
    const auto a = fixture_ring("thm10.4-sweep");
    const auto o = oracle::from_library(a);
    const auto m = oracle::lattice_space(a.radical(), o.c);
    int swept = 0;
    for_each_in_box(Levels{1, 1, 1}, [&](const Levels& d) {
      const Levels v = zip_add(d, Levels{1, 1, 1});
      const auto i = oracle::ideal_v(o, v);
      if (i == m) return;
      ++swept;
      c(oracle::stable_reduction(o, i).has_value(), "oracle: I_" + format_levels(v) + " stable");
    });
    c(swept > 0, "sweep is nonempty");
  });

  criterion(3, "Strict closure: formula = search byte for byte; A = A* iff m(normalization) = m", 60, [](Check& c) {
    fixture_passes(c, "ex10.3");
    const auto a = fixture_ring("ex10.3");
    const auto sc = strict_closure(a);
    c(sc.paths.size() == 2 && ring_to_json(sc.paths[0].second).dump() == ring_to_json(sc.paths[1].second).dump(), "paths byte-equal");
    const auto o = oracle::from_library(a);
    c(view(sc.ring, o) == oracle::least_with(o, [](const oracle::Ring& r) { return oracle::is_arf(r); }), "oracle: least Arf overring");
    int used = 0;
    for (const auto& [name, r] : corpus()) {
      if (!thm_10_1_hypotheses(r).holds) continue;
      ++used;
      const bool closed = strict_closure(r).ring == r;
      const bool ext = Lattice<F>::tail(r.field(), r.radical().profile()) == r.radical();
      c(closed == ext, "A = A* iff m(normalization) = m on " + name);
    }
    c(used > 0, "corpus has transversal rings");
  });

  criterion(4, "all rational lines: q = 2 weakly Arf; q = 3 not, with an unstable Lambda witness", 30, [](Check& c) {
    fixture_passes(c, "cor10.6-q2");
    fixture_passes(c, "cor10.6-q3");
    c(oracle::is_weakly_arf(oracle::from_library(fixture_ring("cor10.6-q2"))), "oracle: q = 2 weakly Arf");
    const auto a3 = fixture_ring("cor10.6-q3");
    const auto o3 = oracle::from_library(a3);
    c(!oracle::is_weakly_arf(o3), "oracle: q = 3 not weakly Arf");
    const auto w = is_weakly_arf(a3);
    c(w.witness_v.has_value(), "witness reported");
    if (w.witness_v) c(!oracle::stable_reduction(o3, oracle::ideal_v(o3, *w.witness_v)), "oracle: witness ideal unstable");
  });

  criterion(5, "three lines over F_7 via cube roots of unity: Arf, blow-up of m = normalization, conductor (1,1,1)", 5, [](Check& c) {
    fixture_passes(c, "thm-ch-f7");
    const auto a = fixture_ring("thm-ch-f7");
    const auto o = oracle::from_library(a);
    c(o.c == oracle::Lv{1, 1, 1}, "oracle: conductor");
    c(oracle::is_arf(o), "oracle: Arf");
    const auto b = oracle::blowup_stable(o, oracle::lattice_space(a.radical(), o.c));
    c(b && *b == oracle::normalization(o.p, o.c), "oracle: blow-up of m");
  });

  criterion(6, "k[t^l + t^(l+1)] + t^(l+2) k[[t]], l = 2, 3: both chain choices, weakly Arf", 10, [](Check& c) {
    for (int l : {2, 3}) {
      const std::string id = "ex9.15-l" + std::to_string(l);
      fixture_passes(c, id);
      const auto a = fixture_ring(id);
      const auto o = oracle::from_library(a);
      c(oracle::is_weakly_arf(o), "oracle: weakly Arf l=" + std::to_string(l));
      c(o == oracle_ring(spec_of(id)), "oracle: ring rebuilt from generators l=" + std::to_string(l));
      c(o.c == oracle::Lv{l + 2}, "oracle: R:normalization is the t^(l+2) tail, l=" + std::to_string(l));
      for (int q = 1; q <= l + 1; ++q) c(!o.s.contains(oracle::monomial(o.c, 0, q)), "oracle: t^q not in R");
      const auto tail = Lattice<F>::tail(a.field(), a.conductor());
      const auto b1 = oracle::blowup_stable(o, oracle::lattice_space(tail, o.c));
      c(b1 && *b1 == oracle::normalization(o.p, o.c), "oracle: tail blow-up is the normalization");
      const auto b2 = oracle::blowup_stable(o, oracle::lattice_space(closure_lattice(a, Levels{l}), o.c));
      const auto t23 = oracle::from_library(ring_from(F(2), semigroup_spec({2, 3})));
      c(b2 && b2->s == oracle::at_level(t23, o.c), "oracle: lex blow-up is k[[t^2,t^3]]");
    }
  });

  criterion(7, "Semigroup engine on every semigroup with Frobenius <= 15", 60, [](Check& c) {
    const auto all = semigroups_with_frobenius_at_most(15);
    const auto ref = oracle::sg::all_with_frobenius_at_most(15);
    c(all.size() == ref.size(), "enumeration count " + std::to_string(all.size()) + " vs " + std::to_string(ref.size()));
    const int n = 32;
    std::vector<oracle::sg::Bits> arf;
    for (const auto& b : ref)
      if (oracle::sg::is_arf(b)) arf.push_back(b);
    for (const auto& h : all) {
      const auto fx = arf_closure_fixpoint(h);
      c(fx == arf_closure_multiplicity_sequence(h), "fixpoint = multiplicity sequence for " + h.to_string());
      oracle::sg::Bits least(n + 1, true);
      const auto hb = bits(h, 2 * 15 + 2);
      for (const auto& b : arf) {
        bool over = true;
        for (std::size_t x = 0; x < b.size(); ++x) over = over && (!hb[x] || b[x]);
        if (over)
          for (int x = 0; x <= n; ++x) least[x] = least[x] && (x >= static_cast<int>(b.size()) || b[x]);
      }
      c(bits(fx, n) == least, "closure is the least Arf semigroup for " + h.to_string());
      c(is_arf_semigroup(h) == oracle::sg::is_arf(bits(h, n)), "Arf verdict for " + h.to_string());
    }
    const auto cl = arf_closure_fixpoint(NumericalSemigroup::from_generators({4, 5, 6}));
    c(cl.small_elements() == std::vector<int>{0, 4}, "<4,5,6> closure = {0} u [4, oo)");
    for (int k = 2; k <= 8; ++k) {
      std::vector<int> g;
      for (int x = k; x < 2 * k; ++x) g.push_back(x);
      c(is_arf_semigroup(NumericalSemigroup::from_generators(g)), "<n..2n-1> Arf for n=" + std::to_string(k));
    }
  });

  criterion(8, "Lambda test = direct oracle on F_2/F_3 fixtures and 24 random F_2 rings", 300, [](Check& c) {
    std::size_t random = 0;
    for (const auto& [name, a] : corpus()) {
      const bool lam = is_weakly_arf(a).holds;
      c(lam == is_weakly_arf_bruteforce(a).holds, "library direct oracle on " + name);
      c(lam == oracle::is_weakly_arf(oracle::from_library(a)), "test oracle on " + name);
      if (name.rfind("random#", 0) == 0) {
        ++random;
        c(a.branches() >= 2 && a.branches() <= 3 && *std::max_element(a.conductor().begin(), a.conductor().end()) <= 3,
          "random ring shape " + name);
      }
    }
    c(random >= 20, "at least 20 random rings");
  });

  criterion(9, "Closure tower: A in A^a in A* in normalization, idempotence, Arf iff A = A*", 300, [](Check& c) {
    for (const auto& [name, a] : corpus()) {
      const auto aa = weakly_arf_closure(a).terminal;
      const auto sc = strict_closure(a);
      const auto nz = BranchAlgebra<F>::normalization(a.field(), a.branches());
      c(aa.includes(a) && sc.ring.includes(aa) && nz.includes(sc.ring), "inclusions on " + name);
      c(is_weakly_arf(aa).holds, "A^a weakly Arf on " + name);
      c(is_arf(sc.ring).holds, "A* Arf on " + name);
      c(is_arf(a).holds == (sc.ring == a), "Arf iff A = A* on " + name);
      c(weakly_arf_closure(aa).terminal == aa, "(A^a)^a = A^a on " + name);
      const auto o = oracle::from_library(a);
      if (!small_enough(o)) continue;
      c(view(aa, o) == oracle::least_with(o, [](const oracle::Ring& r) { return oracle::is_weakly_arf(r); }), "oracle: A^a on " + name);
      c(view(sc.ring, o) == oracle::least_with(o, [](const oracle::Ring& r) { return oracle::is_arf(r); }), "oracle: A* on " + name);
    }
  });

  criterion(10, "Functoriality over k[[t^2,t^3]], k[[t^3,t^4,t^5]], k[[t^4,t^5,t^6]], normalization", 300, [](Check& c) {
    const std::vector<BranchAlgebra<F>> fs = {ring_from(F(2), semigroup_spec({2, 3})), ring_from(F(2), semigroup_spec({3, 4, 5})),
                                              ring_from(F(2), semigroup_spec({4, 5, 6})), BranchAlgebra<F>::normalization(F(2), 1)};
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const std::string tag = std::to_string(i) + "," + std::to_string(j);
        const auto p = oracle::from_library(product_ring(fs[i], fs[j]));
        c(oracle::is_weakly_arf(p) == (is_weakly_arf(fs[i]).holds && is_weakly_arf(fs[j]).holds), "product " + tag);
        const auto fp = oracle::from_library(fiber_product_ring(fs[i], fs[j]));
        for (const ArfMode mode : {ArfMode::weakly_arf, ArfMode::arf}) {
          const auto au = fiber_product_audit(fs[i], fs[j], mode);
          c(au.agree, "fiber audit " + tag + " " + to_string(mode));
          c(au.direct == (mode == ArfMode::arf ? oracle::is_arf(fp) : oracle::is_weakly_arf(fp)), "oracle: fiber product " + tag);
          const auto iv = idealization_predicate(fs[i], FractionalModule<F>::free_normalization(fs[i], 2), mode);
          c(iv.holds == mode_test(fs[i], mode), "idealization " + tag);
        }
        if (i == j) c(oracle::is_weakly_arf(fp) == is_weakly_arf(fs[i]).holds, "self fiber product " + tag);
      }
  });

  criterion(11, "prop15.2 and sec11-RH fixture rings are strictly closed", 30, [](Check& c) {
    fixture_passes(c, "prop15.2");
    fixture_passes(c, "sec11-RH");
    const auto rh = fixture_ring("sec11-RH");
    const auto o = oracle::from_library(rh);
    c(oracle::is_arf(o), "oracle: RH ring Arf");
    if (small_enough(o))
      c(view(rh, o) == oracle::least_with(o, [](const oracle::Ring& r) { return oracle::is_arf(r); }), "oracle: RH is its own least Arf overring");
  });

  criterion(12, "Fixture verdicts invariant under T -> T+2", 300, [](Check& c) {
    for (const auto& f : registry()) {
      Settings s0, s2;
      s2.extra_truncation = 2;
      const auto r0 = f.run(f, s0), r2 = f.run(f, s2);
      c(r0.pass() && r2.pass(), f.id + " passes at both depths");
      c(r0.to_json().at("assertions") == r2.to_json().at("assertions"), f.id + " identical verdicts");
    }
    for (const auto& a : random_f2_rings(24, 0xa11ce)) {
      const auto b = BranchAlgebra<F>::from_lattice(a.lattice(), a.settings(), zip_add(a.truncation(), Levels(a.branches(), 2)));
      c(is_weakly_arf(a).holds == is_weakly_arf(b).holds && is_arf(a).holds == is_arf(b).holds, "random ring verdicts");
    }
  });

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
