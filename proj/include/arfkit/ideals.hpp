#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/branch_algebra.hpp"

namespace arfkit {

// I_v = t^v * normalization ∩ A. `v` is reduced to v ∧ c; `requested` keeps the caller's vector.
template <ExactField K>
struct OpenIdeal {
  Levels requested;
  Levels v;
  Lattice<K> lattice;
  bool realizable = false;
  std::optional<BranchElement<K>> realizer;
};

// Calls f on every vector in the box prod [0, hi_i], in lexicographic order.
inline void for_each_in_box(const Levels& hi, const std::function<void(const Levels&)>& f) {
  Levels v(hi.size(), 0);
  while (true) {
    f(v);
    std::size_t i = hi.size();
    while (i > 0) {
      --i;
      if (v[i] < hi[i]) {
        ++v[i];
        for (std::size_t j = i + 1; j < hi.size(); ++j) v[j] = 0;
        break;
      }
      if (i == 0) return;
    }
    if (hi.empty()) return;
  }
}

// A point of U with every coordinate nonzero, if any.
template <ExactField K>
std::optional<Vec<K>> torus_point(const K& k, const Subspace<K>& u, const Caps& caps) {
  const std::size_t n = u.ambient_dim();
  const std::size_t r = u.dim();
  for (std::size_t i = 0; i < n; ++i) {
    bool used = false;
    for (const auto& row : u.basis()) used = used || !k.is_zero(row[i]);
    if (!used) return std::nullopt;
  }
  auto combine = [&](const Vec<K>& alpha) {
    Vec<K> y(n, k.zero());
    for (std::size_t j = 0; j < r; ++j) detail::axpy(k, y, k.neg(alpha[j]), u.basis()[j]);
    return y;
  };
  auto in_torus = [&](const Vec<K>& y) {
    for (const auto& x : y)
      if (k.is_zero(x)) return false;
    return true;
  };
  if (const auto q = k.order()) {
    // Pivot coordinates of y are the alpha_j themselves, so only nonzero alpha need checking.
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < r; ++j) {
      count *= (*q - 1);
      require(count <= caps.torus_enumeration, ErrorKind::resource_cap,
              "leading-coefficient image too large to enumerate");
    }
    Vec<K> alpha(r, k.one());
    std::vector<std::uint64_t> digit(r, 1);
    for (std::uint64_t step = 0; step < count; ++step) {
      for (std::size_t j = 0; j < r; ++j) alpha[j] = k.element(digit[j]);
      const Vec<K> y = combine(alpha);
      if (in_torus(y)) return y;
      for (std::size_t j = r; j-- > 0;) {
        if (++digit[j] < *q) break;
        digit[j] = 1;
      }
    }
    return std::nullopt;
  }
  // Infinite field: a nonzero linear form vanishes at (1, s, ..., s^(r-1)) for fewer than r values of s.
  for (std::uint64_t s = 0; s <= n * r + 1; ++s) {
    Vec<K> alpha(r, k.one());
    for (std::size_t j = 1; j < r; ++j) alpha[j] = k.mul(alpha[j - 1], k.element(s));
    const Vec<K> y = combine(alpha);
    if (in_torus(y)) return y;
  }
  fail(ErrorKind::internal, "hyperplane avoidance failed over an infinite field");
}

// An element x of L with valuation vector exactly w, if one exists.
template <ExactField K>
std::optional<BranchElement<K>> element_with_valuation(const Lattice<K>& l, const Levels& w, const Caps& caps) {
  const K& k = l.field();
  const std::size_t n = w.size();
  const Lattice<K> restricted = lattice_restrict_valuation(l, w);
  const Levels lv = zip_max(restricted.level(), shifted(w, 1));
  const Lattice<K> r = restricted.at_level(lv);
  const auto off = offsets_of(lv);
  Eliminator<K> elim(k, n);
  Subspace<K> image(k, n);
  for (const auto& row : r.rows()) {
    Vec<K> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = row[off[i] + w[i]];
    image.insert(lam);
    elim.add(std::move(lam));
  }
  const auto y = torus_point(k, image, caps);
  if (!y) return std::nullopt;
  const auto combo = elim.solve(*y);
  require(combo.has_value(), ErrorKind::internal, "torus point outside the leading-coefficient image");
  Vec<K> x(off.back(), k.zero());
  for (std::size_t j = 0; j < combo->size(); ++j)
    if (!k.is_zero((*combo)[j])) detail::axpy(k, x, k.neg((*combo)[j]), r.rows()[j]);
  return BranchElement<K>::from_flat(k, x, lv);
}

template <ExactField K>
Lattice<K> closure_lattice(const BranchAlgebra<K>& a, const Levels& v) {
  require(v.size() == a.branches(), ErrorKind::configuration, "valuation vector has the wrong length");
  for (int x : v) require(x >= 0, ErrorKind::configuration, "negative valuation");
  return lattice_restrict_valuation(a.lattice(), v);
}

template <ExactField K>
OpenIdeal<K> principal_closure(const BranchAlgebra<K>& a, const Levels& v) {
  OpenIdeal<K> out{v, zip_min(v, a.conductor()), closure_lattice(a, v), false, std::nullopt};
  out.realizer = element_with_valuation(out.lattice, v, a.caps());
  out.realizable = out.realizer.has_value();
  return out;
}

// Realizable valuation vectors v <= c.
template <ExactField K>
std::vector<Levels> value_set(const BranchAlgebra<K>& a) {
  std::vector<Levels> out;
  for_each_in_box(a.conductor(), [&](const Levels& v) {
    if (element_with_valuation(closure_lattice(a, v), v, a.caps())) out.push_back(v);
  });
  return out;
}

// Box whose realizable vectors index every member of Lambda(A) up to the conductor shift; it also
// contains every maximal member (branches with c_i = 0 need v_i = 1).
template <ExactField K>
Levels lambda_box(const BranchAlgebra<K>& a) {
  return zip_max(a.conductor(), Levels(a.branches(), 1));
}

template <ExactField K>
struct Generators {
  std::vector<Vec<K>> elements;
  Levels level;
};

// Minimal A-module generators of an A-module L: lifts of a basis of L / J L (J the radical).
template <ExactField K>
Generators<K> module_generators(const BranchAlgebra<K>& a, const Lattice<K>& l) {
  const Lattice<K> jl = lattice_product_with(l, a.radical_generators(), a.radical_generators_level(),
                                             a.radical().depth());
  Generators<K> g;
  g.level = zip_max(jl.level(), l.depth());
  Subspace<K> acc = jl.at_level(g.level).span();
  const Lattice<K> raised = l.at_level(g.level);
  for (const auto& r : raised.rows())
    if (acc.insert(r)) g.elements.push_back(r);
  return g;
}

// Minimal number of generators: over a semi-local ring this is the largest dim L / m_j L.
template <ExactField K>
int mu(const BranchAlgebra<K>& a, const Lattice<K>& l) {
  if (a.is_local()) return static_cast<int>(module_generators(a, l).elements.size());
  int best = 0;
  for (const auto& cls : a.residue_classes()) {
    Levels v(a.branches(), 0);
    for (std::size_t i : cls) v[i] = 1;
    const Lattice<K> ml = lattice_product(lattice_restrict_valuation(a.lattice(), v), l);
    const Levels lv = zip_max(ml.depth(), l.depth());
    best = std::max(best, static_cast<int>(l.dim_at(lv) - ml.dim_at(lv)));
  }
  return best;
}

// Product of an A-module L with the A-module M.
template <ExactField K>
Lattice<K> ideal_product(const BranchAlgebra<K>& a, const Lattice<K>& l, const Lattice<K>& m) {
  const Generators<K> g = module_generators(a, m);
  return lattice_product_with(l, g.elements, g.level, m.depth(), a.truncation()).canonical();
}

template <ExactField K>
Lattice<K> ideal_power(const BranchAlgebra<K>& a, const Lattice<K>& l, int n) {
  if (n == 0) return a.lattice();
  const Generators<K> g = module_generators(a, l);
  const Levels d = l.depth();
  Lattice<K> p = l;
  for (int i = 1; i < n; ++i) p = lattice_product_with(p, g.elements, g.level, d, a.truncation()).canonical();
  return p;
}

template <ExactField K>
Lattice<K> times_element(const BranchAlgebra<K>& a, const Lattice<K>& l, const BranchElement<K>& x) {
  const Levels p = x.precision();
  return lattice_times(l, x.flat(p), p, a.truncation()).canonical();
}

// Overring A[L] for a lattice L inside the normalization.
template <ExactField K>
BranchAlgebra<K> adjoin(const BranchAlgebra<K>& a, const std::vector<Lattice<K>>& ls) {
  const K& k = a.field();
  const Levels& c = a.conductor();
  std::vector<Vec<K>> gens;
  for (const auto& l : ls) {
    const Subspace<K> img = l.image_mod(c);
    gens.insert(gens.end(), img.basis().begin(), img.basis().end());
  }
  Subspace<K> s = saturate_products(k, c, a.lattice().span(), gens);
  return a.derive(Lattice<K>(k, c, std::move(s)));
}

// I : I as an overring of A.
template <ExactField K>
BranchAlgebra<K> ideal_colon_endo(const BranchAlgebra<K>& a, const Lattice<K>& i) {
  return a.derive(lattice_colon(i, i, a.truncation()));
}

template <ExactField K>
struct StabilityVerdict {
  bool stable = false;
  bool has_principal_reduction = false;
  Levels profile;
  std::optional<BranchElement<K>> witness;  // element a with I^2 = aI, or the candidate that failed
};

template <ExactField K>
std::optional<BranchElement<K>> principal_reduction(const BranchAlgebra<K>& a, const Lattice<K>& i) {
  return element_with_valuation(i, i.profile(), a.caps());
}

template <ExactField K>
bool has_principal_reduction(const BranchAlgebra<K>& a, const Lattice<K>& i) {
  return principal_reduction(a, i).has_value();
}

template <ExactField K>
StabilityVerdict<K> is_stable(const BranchAlgebra<K>& a, const Lattice<K>& i) {
  StabilityVerdict<K> out;
  out.profile = i.profile();
  out.witness = principal_reduction(a, i);
  out.has_principal_reduction = out.witness.has_value();
  if (!out.witness) return out;
  out.stable = ideal_product(a, i, i) == times_element(a, i, *out.witness);
  return out;
}

template <ExactField K>
struct BlowupResult {
  BranchAlgebra<K> ring;
  int stabilization_index = 0;            // least n with I^n : I^n equal to the blow-up
  std::optional<int> reduction_number;    // least r with I^(r+1) = a I^r, when a reduction a exists
  std::optional<BranchElement<K>> reduction;
};

template <ExactField K>
BlowupResult<K> blowup(const BranchAlgebra<K>& a, const Lattice<K>& i) {
  const Levels w = i.profile();
  const auto red = principal_reduction(a, i);
  const Generators<K> g = module_generators(a, i);
  const Levels d = i.depth();
  auto next_power = [&](const Lattice<K>& p) {
    return lattice_product_with(p, g.elements, g.level, d, a.truncation()).canonical();
  };
  // Over an extension with infinite residue field the reduction number is at most e(I) - 1.
  const int bound = std::max(1, total(w));
  std::vector<Lattice<K>> powers{a.lattice(), i};
  std::optional<int> rn;
  if (red) {
    for (int r = 0; r <= bound; ++r) {
      if (static_cast<int>(powers.size()) < r + 2) powers.push_back(next_power(powers.back()));
      if (powers[r + 1] == times_element(a, powers[r], *red)) {
        rn = r;
        break;
      }
    }
    require(rn.has_value(), ErrorKind::internal, "reduction number exceeds the multiplicity bound");
  }
  const int top = rn ? std::max(*rn, 1) : bound;
  while (static_cast<int>(powers.size()) <= top) powers.push_back(next_power(powers.back()));
  std::optional<BranchAlgebra<K>> ring;
  if (red) {
    const Levels p = red->precision();
    ring = adjoin(a, {lattice_divide(i, red->flat(p), p)});
  } else {
    ring = a.derive(lattice_colon(powers[top], powers[top], a.truncation()));
  }
  int index = 0;
  while (index < top && !(a.derive(lattice_colon(powers[index], powers[index], a.truncation())) == *ring)) ++index;
  if (index == top && red) {
    require(a.derive(lattice_colon(powers[top], powers[top], a.truncation())) == *ring, ErrorKind::internal,
            "A[I/a] differs from I^r : I^r");
  }
  return BlowupResult<K>{*ring, index, rn, red};
}

// Lambda(A): distinct proper I_v for realizable v in the lambda box, in lexicographic order of v.
template <ExactField K>
std::vector<OpenIdeal<K>> lambda(const BranchAlgebra<K>& a) {
  std::vector<OpenIdeal<K>> out;
  for_each_in_box(lambda_box(a), [&](const Levels& v) {
    if (total(v) == 0) return;
    OpenIdeal<K> id = principal_closure(a, v);
    if (!id.realizable) return;
    for (const auto& o : out)
      if (o.lattice == id.lattice) return;
    out.push_back(std::move(id));
  });
  return out;
}

template <ExactField K>
std::vector<OpenIdeal<K>> lambda_max(const BranchAlgebra<K>& a) {
  const auto all = lambda(a);
  std::vector<OpenIdeal<K>> out;
  for (std::size_t x = 0; x < all.size(); ++x) {
    bool maximal = true;
    for (std::size_t y = 0; y < all.size() && maximal; ++y)
      if (y != x && all[y].lattice.includes(all[x].lattice)) maximal = false;
    if (maximal) out.push_back(all[x]);
  }
  return out;
}

template <ExactField K>
struct LocalInvariants {
  int embedding_dimension = 0;
  int multiplicity = 0;
  bool minimal_multiplicity = false;
};

// e(A) is the length of normalization / m * normalization, i.e. the sum of the profile of m.
template <ExactField K>
LocalInvariants<K> local_invariants(const BranchAlgebra<K>& a) {
  require(a.is_local(), ErrorKind::domain, "local invariants need a local ring");
  LocalInvariants<K> out;
  out.embedding_dimension = mu(a, a.radical());
  out.multiplicity = total(a.radical().profile());
  out.minimal_multiplicity = out.multiplicity == out.embedding_dimension;
  return out;
}

}  // namespace arfkit
