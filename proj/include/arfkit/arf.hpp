#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/construct.hpp"
#include "arfkit/ideals.hpp"

namespace arfkit {

template <ExactField K>
struct WeakArfVerdict {
  bool holds = true;
  int ideals_checked = 0;
  std::optional<Levels> witness_v;               // an unstable member of Lambda(A)
  std::optional<BranchElement<K>> witness_element;
};

template <ExactField K>
WeakArfVerdict<K> is_weakly_arf(const BranchAlgebra<K>& a) {
  WeakArfVerdict<K> out;
  for (const auto& id : lambda(a)) {
    ++out.ideals_checked;
    const auto st = is_stable(a, id.lattice);
    if (!st.stable) {
      out.holds = false;
      out.witness_v = id.requested;
      out.witness_element = id.realizer;
      return out;
    }
  }
  return out;
}

template <ExactField K>
struct ArfVerdict {
  bool holds = false;
  bool weakly_arf = false;
  std::optional<Levels> unstable_v;
  std::optional<Levels> unreduced_v;  // an integrally closed I_v without principal reduction
};

template <ExactField K>
ArfVerdict<K> is_arf(const BranchAlgebra<K>& a) {
  ArfVerdict<K> out;
  const auto wa = is_weakly_arf(a);
  out.weakly_arf = wa.holds;
  out.unstable_v = wa.witness_v;
  std::vector<Lattice<K>> seen;
  for_each_in_box(lambda_box(a), [&](const Levels& v) {
    if (out.unreduced_v || total(v) == 0) return;
    const Lattice<K> i = closure_lattice(a, v);
    for (const auto& s : seen)
      if (s == i) return;
    seen.push_back(i);
    if (!has_principal_reduction(a, i)) out.unreduced_v = v;
  });
  out.holds = out.weakly_arf && !out.unreduced_v;
  return out;
}

template <ExactField K>
struct BruteforceVerdict {
  bool holds = true;
  std::uint64_t elements_enumerated = 0;
  std::optional<BranchElement<K>> x, y, z;  // yz/x outside A
};

// Direct check of: x a non-zerodivisor, y/x and z/x in the normalization => yz/x in A.
// Everything is taken modulo the conductor c: y, z range over a basis of (A ∩ xĀ)/c, the
// condition is bilinear in (y, z), elements of c contribute nothing, and yz/x mod c depends only
// on x mod c (branches where x lies in t^c give components inside c).
template <ExactField K>
BruteforceVerdict<K> is_weakly_arf_bruteforce(const BranchAlgebra<K>& a) {
  const K& k = a.field();
  const auto q = k.order();
  require(q.has_value(), ErrorKind::resource_cap, "the direct oracle needs a finite field");
  const Levels& c = a.conductor();
  const auto off = offsets_of(c);
  const std::size_t n = c.size();
  const auto& basis = a.lattice().rows();
  const std::size_t r = basis.size();
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < r; ++j) {
    count *= *q;
    require(count <= a.caps().bruteforce, ErrorKind::resource_cap,
            "direct oracle would enumerate more than " + std::to_string(a.caps().bruteforce) + " elements");
  }
  BruteforceVerdict<K> out;
  std::map<Levels, Lattice<K>> ideals;
  std::vector<std::uint64_t> digit(r, 0);
  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0)
      for (std::size_t j = r; j-- > 0;) {
        if (++digit[j] < *q) break;
        digit[j] = 0;
      }
    Vec<K> x(off.back(), k.zero());
    for (std::size_t j = 0; j < r; ++j)
      if (digit[j]) detail::axpy(k, x, k.neg(k.element(digit[j])), basis[j]);
    ++out.elements_enumerated;
    const auto vals = valuations_flat(k, x, c);
    Levels w(n);
    bool all_deep = true;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = vals[i] ? *vals[i] : c[i];
      all_deep = all_deep && w[i] == c[i];
    }
    if (all_deep) continue;
    auto it = ideals.find(w);
    if (it == ideals.end()) it = ideals.emplace(w, lattice_restrict_valuation(a.lattice(), w).at_level(c)).first;
    const auto& ys = it->second.rows();
    // Inverse of the unit part of x on each branch where x is not inside the conductor.
    std::vector<Vec<K>> uinv(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] >= c[i]) continue;
      uinv[i] = detail::invert_unit(k, x.data() + off[i] + w[i], static_cast<std::size_t>(c[i] - w[i]));
    }
    for (std::size_t s = 0; s < ys.size(); ++s)
      for (std::size_t t = s; t < ys.size(); ++t) {
        Vec<K> quotient(off.back(), k.zero());
        for (std::size_t i = 0; i < n; ++i) {
          if (w[i] >= c[i]) continue;
          const std::size_t len = static_cast<std::size_t>(c[i] - w[i]);
          Vec<K> yz(len, k.zero()), full(len, k.zero());
          detail::mul_accumulate(k, ys[s].data() + off[i] + w[i], len, ys[t].data() + off[i] + w[i], len, yz.data(), len);
          detail::mul_accumulate(k, yz.data(), len, uinv[i].data(), len, full.data(), len);
          for (std::size_t j = 0; j < len; ++j) quotient[off[i] + w[i] + j] = full[j];
        }
        if (!a.lattice().span().contains(quotient)) {
          out.holds = false;
          out.x = BranchElement<K>::from_flat(k, x, c);
          out.y = BranchElement<K>::from_flat(k, ys[s], c);
          out.z = BranchElement<K>::from_flat(k, ys[t], c);
          return out;
        }
      }
  }
  return out;
}

template <ExactField K>
struct ChainStep {
  BranchAlgebra<K> ring;        // the ring A_m the step starts from
  Lattice<K> ideal;             // the ideal blown up (for closures: the first unstable one)
  Levels v;
  int mu = 0;
  std::vector<Levels> contributors;  // closures only: every unstable member used in this step
};

template <ExactField K>
struct ClosureChain {
  std::string kind;      // "weakly-arf-closure" or "def-9.9"
  std::string strategy;  // "lex", "all", "explicit"
  std::vector<ChainStep<K>> steps;
  BranchAlgebra<K> terminal;
};

// A_{m+1} = A_m[I * A_m^I : I in Lambda(A_m)], until every member of Lambda is stable.
template <ExactField K>
ClosureChain<K> weakly_arf_closure(const BranchAlgebra<K>& a) {
  ClosureChain<K> chain{"weakly-arf-closure", "all-ideals", {}, a};
  BranchAlgebra<K> cur = a;
  while (true) {
    std::vector<Lattice<K>> extras;
    std::optional<ChainStep<K>> step;
    for (const auto& id : lambda(cur)) {
      if (is_stable(cur, id.lattice).stable) continue;
      const BranchAlgebra<K> b = blowup(cur, id.lattice).ring;
      extras.push_back(ideal_product(cur, b.lattice(), id.lattice));
      if (!step) step = ChainStep<K>{cur, id.lattice, id.requested, mu(cur, id.lattice), {}};
      step->contributors.push_back(id.requested);
    }
    if (!step) break;
    BranchAlgebra<K> next = adjoin(cur, extras);
    require(!(next == cur), ErrorKind::internal, "weakly Arf closure step did not grow the ring");
    chain.steps.push_back(std::move(*step));
    cur = std::move(next);
  }
  chain.terminal = cur;
  return chain;
}

enum class ChainStrategy { lex_first, all_choices };

namespace detail {

template <ExactField K>
void explore_chains(const BranchAlgebra<K>& r, ChainStrategy strategy, const std::optional<Lattice<K>>& first,
                    std::vector<ChainStep<K>>& path, std::vector<ClosureChain<K>>& out, const std::string& tag) {
  if (r.is_normalization()) {
    require(out.size() < r.caps().chain_paths, ErrorKind::resource_cap, "too many blow-up chains");
    out.push_back(ClosureChain<K>{"def-9.9", tag, path, r});
    return;
  }
  std::vector<ChainStep<K>> candidates;
  if (first && path.empty()) {
    candidates.push_back(ChainStep<K>{r, *first, first->profile(), mu(r, *first), {}});
  } else {
    for (const auto& m : lambda_max(r)) {
      const int u = mu(r, m.lattice);
      if (u >= 2) candidates.push_back(ChainStep<K>{r, m.lattice, m.requested, u, {}});
    }
  }
  require(!candidates.empty(), ErrorKind::internal,
          "ring is not integrally closed but every maximal member of Lambda is principal");
  std::vector<BranchAlgebra<K>> children;
  for (const auto& cand : candidates) {
    BranchAlgebra<K> next = blowup(r, cand.ideal).ring;
    require(!(next == r), ErrorKind::internal, "blow-up did not grow the ring");
    bool dup = false;
    for (const auto& ch : children) dup = dup || ch == next;
    if (dup) continue;
    children.push_back(next);
    path.push_back(cand);
    explore_chains(next, strategy, first, path, out, tag);
    path.pop_back();
    if (strategy == ChainStrategy::lex_first) break;
  }
}

}  // namespace detail

// Chains A = A_0 ⊂ A_1 ⊂ ... ⊂ normalization with A_{m+1} = A_m^M, M in Max Lambda(A_m), mu(M) >= 2.
// `first` optionally fixes the ideal blown up at the first step.
template <ExactField K>
std::vector<ClosureChain<K>> chain_def_9_9(const BranchAlgebra<K>& a, ChainStrategy strategy,
                                           const std::optional<Lattice<K>>& first = std::nullopt) {
  std::vector<ClosureChain<K>> out;
  std::vector<ChainStep<K>> path;
  const std::string tag = first ? "explicit" : (strategy == ChainStrategy::lex_first ? "lex" : "all");
  detail::explore_chains(a, strategy, first, path, out, tag);
  return out;
}

template <ExactField K>
struct TransversalityReport {
  bool local = false;
  bool pairwise_transverse = false;  // P_i + P_j = m for all i != j
  bool branches_normal = false;      // every A/P_i is the full branch ring
  bool holds = false;
};

// Hypotheses of the k + m * normalization formula for the strict closure.
template <ExactField K>
TransversalityReport<K> thm_10_1_hypotheses(const BranchAlgebra<K>& a) {
  TransversalityReport<K> out;
  out.local = a.is_local();
  if (!out.local) return out;
  const std::size_t n = a.branches();
  const Levels& c = a.conductor();
  // P_i + conductor = A ∩ t^(c_i e_i); P_i + P_j contains the conductor when i != j.
  std::vector<Lattice<K>> kernels;
  for (std::size_t i = 0; i < n; ++i) {
    Levels v(n, 0);
    v[i] = c[i];
    kernels.push_back(closure_lattice(a, v));
  }
  out.pairwise_transverse = true;
  for (std::size_t i = 0; i < n && out.pairwise_transverse; ++i)
    for (std::size_t j = i + 1; j < n && out.pairwise_transverse; ++j)
      out.pairwise_transverse = lattice_sum(kernels[i], kernels[j]) == a.radical();
  out.branches_normal = true;
  for (std::size_t i = 0; i < n; ++i) out.branches_normal = out.branches_normal && projection_ring(a, {i}).is_normalization();
  out.holds = out.local && out.pairwise_transverse && out.branches_normal;
  return out;
}

// k + m * normalization for local A.
template <ExactField K>
BranchAlgebra<K> residue_plus_extended_maximal(const BranchAlgebra<K>& a) {
  require(a.is_local(), ErrorKind::domain, "k + m * normalization needs a local ring");
  const Levels w = a.radical().profile();
  const Lattice<K> l = Lattice<K>::from_rows(a.field(), w, {one_flat(a.field(), w)});
  return a.derive(l);
}

// Every ring between A and the normalization (finite fields only).
template <ExactField K>
std::vector<BranchAlgebra<K>> intermediate_rings(const BranchAlgebra<K>& a) {
  const K& k = a.field();
  const auto q = k.order();
  require(q.has_value(), ErrorKind::resource_cap, "intermediate-ring search needs a finite field");
  std::uint64_t size = 1;
  for (int j = 0; j < a.codimension(); ++j) {
    size *= *q;
    require(size <= a.caps().lattice_search, ErrorKind::resource_cap,
            "normalization / A has more than " + std::to_string(a.caps().lattice_search) + " elements");
  }
  const Levels& c = a.conductor();
  std::vector<BranchAlgebra<K>> found{a};
  for (std::size_t head = 0; head < found.size(); ++head) {
    const BranchAlgebra<K> b = found[head];
    const Lattice<K> bl = b.lattice().at_level(c);
    // Coset representatives of normalization / B: combinations of the non-pivot unit vectors.
    std::vector<std::size_t> free;
    {
      std::size_t p = 0;
      for (std::size_t col = 0; col < static_cast<std::size_t>(total(c)); ++col) {
        if (p < bl.span().pivots().size() && bl.span().pivots()[p] == col) {
          ++p;
          continue;
        }
        free.push_back(col);
      }
    }
    std::uint64_t reps = 1;
    for (std::size_t j = 0; j < free.size(); ++j) reps *= *q;
    std::vector<std::uint64_t> digit(free.size(), 0);
    for (std::uint64_t step = 1; step < reps; ++step) {
      for (std::size_t j = free.size(); j-- > 0;) {
        if (++digit[j] < *q) break;
        digit[j] = 0;
      }
      Vec<K> x(static_cast<std::size_t>(total(c)), k.zero());
      for (std::size_t j = 0; j < free.size(); ++j) x[free[j]] = k.element(digit[j]);
      const Subspace<K> s = saturate_products(k, c, bl.span(), {x});
      BranchAlgebra<K> next = a.derive(Lattice<K>(k, c, s));
      bool dup = false;
      for (const auto& f : found) dup = dup || f == next;
      if (dup) continue;
      require(found.size() < a.caps().lattice_nodes, ErrorKind::resource_cap, "intermediate-ring search node cap");
      found.push_back(std::move(next));
    }
  }
  return found;
}

template <ExactField K>
struct StrictClosure {
  BranchAlgebra<K> ring;
  std::string path;                                          // path that produced `ring`
  std::vector<std::pair<std::string, BranchAlgebra<K>>> paths;  // every path that applied
  bool agree = true;
};

// Strict closure = Arf closure = smallest Arf ring between A and the normalization.
// Paths: the k + m * normalization formula (transversal branches), the weakly Arf closure when it
// is already Arf (A^a ⊆ A* always), and exhaustive search over intermediate rings.
template <ExactField K>
StrictClosure<K> strict_closure(const BranchAlgebra<K>& a, bool want_all_paths = true) {
  std::vector<std::pair<std::string, BranchAlgebra<K>>> paths;
  if (thm_10_1_hypotheses(a).holds) paths.emplace_back("formula", residue_plus_extended_maximal(a));
  if (want_all_paths || paths.empty()) {
    const BranchAlgebra<K> aa = weakly_arf_closure(a).terminal;
    if (is_arf(aa).holds) paths.emplace_back("weakly-arf-closure", aa);
  }
  if (want_all_paths || paths.empty()) {
    try {
      const auto rings = intermediate_rings(a);
      std::vector<const BranchAlgebra<K>*> arf;
      for (const auto& r : rings)
        if (is_arf(r).holds) arf.push_back(&r);
      require(!arf.empty(), ErrorKind::internal, "no Arf ring between A and its normalization");
      std::optional<BranchAlgebra<K>> least;
      for (const auto* r : arf) {
        bool below_all = true;
        for (const auto* s : arf) below_all = below_all && s->includes(*r);
        if (below_all) {
          require(!least, ErrorKind::internal, "two least Arf overrings");
          least = *r;
        }
      }
      require(least.has_value(), ErrorKind::internal, "Arf overrings have no least element");
      paths.emplace_back("search", *least);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::resource_cap) throw;
      if (paths.empty()) {
        const BranchAlgebra<K> aa = weakly_arf_closure(a).terminal;
        fail(ErrorKind::resource_cap,
             std::string("strict closure unavailable; bounds: weakly Arf closure (codimension ") +
                 std::to_string(aa.codimension()) + ") ⊆ A* ⊆ normalization; " + e.what());
      }
    }
  }
  StrictClosure<K> out{paths.front().second, paths.front().first, paths, true};
  for (const auto& p : paths) out.agree = out.agree && p.second == out.ring;
  return out;
}

}  // namespace arfkit
