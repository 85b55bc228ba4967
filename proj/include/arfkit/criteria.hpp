#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arfkit/arf.hpp"

namespace arfkit {

// One generator of a rank-r module: r entries, each a list of per-branch coefficient lists.
template <ExactField K>
using ModuleGenerator = std::vector<std::vector<Vec<K>>>;

// A finitely generated A-submodule of the free module (normalization)^r, stored as a lattice on
// n*r branches (copy j of branch i sits at index j*n + i).
template <ExactField K>
class FractionalModule {
 public:
  // The module must be open: it has to contain t^d (normalization)^r for some d. Detection: once
  // M + t^D contains t^d with D - d >= c, the tail t^D = t^(D-d) t^d lies in t^(D-d) M + t^(2D-d),
  // and t^(D-d) belongs to the conductor, so iterating gives t^d ⊆ M.
  static FractionalModule from_generators(const BranchAlgebra<K>& a, int rank, const std::vector<ModuleGenerator<K>>& gens) {
    const K& k = a.field();
    const std::size_t n = a.branches();
    require(rank >= 1, ErrorKind::configuration, "module rank must be positive");
    require(!gens.empty(), ErrorKind::configuration, "module needs at least one generator");
    const std::size_t r = static_cast<std::size_t>(rank);
    for (const auto& g : gens) {
      require(g.size() == r, ErrorKind::configuration, "module generator has the wrong rank");
      for (const auto& e : g) require(e.size() == n, ErrorKind::configuration, "module generator has the wrong branch count");
    }
    const int cap = 4 * std::max(1, a.caps().degree);
    for (int D = 4;; D *= 2) {
      require(D <= cap, ErrorKind::not_finite_conductor, "module contains no tail below degree " + std::to_string(cap));
      const Levels lv(n * r, D);
      const Levels ring_lv(n, D);
      std::vector<Vec<K>> flats;
      for (const auto& g : gens) {
        Vec<K> f;
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t i = 0; i < n; ++i)
            for (int d = 0; d < D; ++d) f.push_back(static_cast<std::size_t>(d) < g[j][i].size() ? g[j][i][d] : k.zero());
        flats.push_back(std::move(f));
      }
      std::vector<Vec<K>> action;
      const Lattice<K> al = a.lattice().at_level(ring_lv);
      for (const auto& row : al.rows()) action.push_back(diagonal(row, r));
      for (std::size_t i = 0; i < n; ++i)
        for (int d = a.conductor()[i]; d < D; ++d) action.push_back(diagonal(monomial_flat(k, ring_lv, i, d), r));
      const Subspace<K> s = saturate_products(k, lv, rref(k, static_cast<std::size_t>(total(lv)), flats), action);
      const Lattice<K> l(k, lv, s);
      const Levels depth = l.depth();
      bool ok = true;
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i) ok = ok && D - depth[j * n + i] >= a.conductor()[i] && depth[j * n + i] < D;
      if (!ok) continue;
      return FractionalModule(a, rank, l.canonical());
    }
  }

  // (normalization)^r.
  static FractionalModule free_normalization(const BranchAlgebra<K>& a, int rank) {
    require(rank >= 1, ErrorKind::configuration, "module rank must be positive");
    return FractionalModule(a, rank, Lattice<K>::whole(a.field(), a.branches() * static_cast<std::size_t>(rank)));
  }

  const BranchAlgebra<K>& ring() const { return ring_; }
  int rank() const { return rank_; }
  const Lattice<K>& lattice() const { return lat_; }

 private:
  FractionalModule(BranchAlgebra<K> a, int rank, Lattice<K> l) : ring_(std::move(a)), rank_(rank), lat_(std::move(l)) {}

  static Vec<K> diagonal(const Vec<K>& v, std::size_t r) {
    Vec<K> out;
    for (std::size_t j = 0; j < r; ++j) out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  BranchAlgebra<K> ring_;
  int rank_;
  Lattice<K> lat_;
};

// M is a module over the normalization iff it is stable under every idempotent e_i and every t e_i
// (the module is complete, so closure under polynomials in these suffices).
template <ExactField K>
bool is_normalization_module(const FractionalModule<K>& m) {
  const K& k = m.ring().field();
  const std::size_t n = m.ring().branches();
  const Lattice<K>& l = m.lattice();
  const Levels& lv = l.level();
  const auto off = offsets_of(lv);
  const std::size_t coords = lv.size();
  for (const auto& row : l.rows())
    for (std::size_t i = 0; i < n; ++i) {
      Vec<K> idem(row.size(), k.zero()), shift(row.size(), k.zero());
      for (std::size_t b = i; b < coords; b += n)
        for (std::size_t d = 0; d < off[b + 1] - off[b]; ++d) {
          idem[off[b] + d] = row[off[b] + d];
          if (d + 1 < off[b + 1] - off[b]) shift[off[b] + d + 1] = row[off[b] + d];
        }
      if (!l.span().contains(idem) || !l.span().contains(shift)) return false;
    }
  return true;
}

enum class ArfMode { weakly_arf, arf };

inline std::string to_string(ArfMode m) { return m == ArfMode::arf ? "arf" : "weakly-arf"; }

template <ExactField K>
bool mode_test(const BranchAlgebra<K>& a, ArfMode mode) {
  return mode == ArfMode::arf ? is_arf(a).holds : is_weakly_arf(a).holds;
}

struct IdealizationVerdict {
  bool ring_test = false;
  bool normalization_module = false;
  bool holds = false;
};

// Verdict for the idealization R ⋉ M, which is never constructed.
template <ExactField K>
IdealizationVerdict idealization_predicate(const BranchAlgebra<K>& r, const FractionalModule<K>& m, ArfMode mode) {
  require(m.ring() == r, ErrorKind::configuration, "module is over a different ring");
  IdealizationVerdict out;
  out.ring_test = mode_test(r, mode);
  out.normalization_module = is_normalization_module(m);
  out.holds = out.ring_test && out.normalization_module;
  return out;
}

struct FiberProductAudit {
  bool left = false;
  bool right = false;
  bool predicate = false;  // both factors pass
  bool direct = false;     // the constructed fiber product passes
  bool agree = false;
};

template <ExactField K>
FiberProductAudit fiber_product_audit(const BranchAlgebra<K>& r, const BranchAlgebra<K>& s, ArfMode mode) {
  FiberProductAudit out;
  out.left = mode_test(r, mode);
  out.right = mode_test(s, mode);
  out.predicate = out.left && out.right;
  out.direct = mode_test(fiber_product_ring(r, s), mode);
  out.agree = out.predicate == out.direct;
  return out;
}

struct Thm911Audit {
  bool c1 = false, c2 = false, c3 = false, c4 = false;
  std::optional<Levels> c2_failure;  // M in Max Lambda where (2) fails
  std::size_t chains = 0;
  std::vector<std::string> violations;  // proved implications contradicted by the engine
};

// Conditions (1)-(4) evaluated independently; in dimension one all four are equivalent.
template <ExactField K>
Thm911Audit thm_9_11_audit(const BranchAlgebra<K>& a) {
  Thm911Audit out;
  out.c1 = is_weakly_arf(a).holds;
  out.c2 = true;
  for (const auto& m : lambda_max(a)) {
    const bool ok = is_stable(a, m.lattice).stable && is_weakly_arf(ideal_colon_endo(a, m.lattice)).holds;
    if (!ok) {
      out.c2 = false;
      out.c2_failure = m.requested;
      break;
    }
  }
  const auto chains = chain_def_9_9(a, ChainStrategy::all_choices);
  out.chains = chains.size();
  out.c3 = true;
  out.c4 = true;
  std::vector<BranchAlgebra<K>> seen;
  for (const auto& ch : chains) {
    std::vector<BranchAlgebra<K>> rings;
    for (const auto& s : ch.steps) rings.push_back(s.ring);
    rings.push_back(ch.terminal);
    for (const auto& r : rings) {
      bool dup = false;
      for (const auto& x : seen) dup = dup || x == r;
      if (dup) continue;
      seen.push_back(r);
      out.c3 = out.c3 && is_weakly_arf(r).holds;
      for (const auto& n : lambda_max(r)) out.c4 = out.c4 && is_stable(r, n.lattice).stable;
    }
  }
  if (out.c1 != out.c2) out.violations.push_back("(1) <=> (2)");
  if (out.c1 != out.c3) out.violations.push_back("(1) <=> (3)");
  if (out.c3 && !out.c4) out.violations.push_back("(3) => (4)");
  if (out.c4 && !out.c1) out.violations.push_back("(4) => (1) in dimension one");
  return out;
}

}  // namespace arfkit
