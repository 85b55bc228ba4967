#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arfkit/branch_algebra.hpp"
#include "arfkit/semigroup.hpp"

namespace arfkit {

template <ExactField K>
BranchAlgebra<K> semigroup_ring(const K& k, const NumericalSemigroup& h, Settings s = {}) {
  const int c = h.conductor();
  std::vector<Vec<K>> rows;
  for (int x = 0; x < c; ++x)
    if (h.contains(x)) rows.push_back(monomial_flat(k, Levels{c}, 0, x));
  return BranchAlgebra<K>::from_lattice(Lattice<K>::from_rows(k, Levels{c}, rows), s);
}

// k + t^j * normalization.
template <ExactField K>
BranchAlgebra<K> gluing_ring(const K& k, const Levels& j, Settings s = {}) {
  for (int x : j) require(x >= 1, ErrorKind::configuration, "gluing exponents must be positive");
  return BranchAlgebra<K>::from_lattice(Lattice<K>::from_rows(k, j, {one_flat(k, j)}), s);
}

// k[gens] + t^tail_degree k[[t]] for one-variable polynomials given by coefficient lists.
template <ExactField K>
BranchAlgebra<K> core_ring(const K& k, const std::vector<Vec<K>>& polys, int tail_degree, Settings s = {}) {
  require(tail_degree >= 1, ErrorKind::configuration, "tail degree must be positive");
  const Levels lv{tail_degree};
  std::vector<Vec<K>> gens;
  for (const auto& p : polys) gens.push_back(resize_flat(k, p, Levels{static_cast<int>(p.size())}, lv));
  Subspace<K> base(k, static_cast<std::size_t>(tail_degree));
  base.insert(one_flat(k, lv));
  return BranchAlgebra<K>::from_lattice(Lattice<K>(k, lv, saturate_products(k, lv, base, gens)), s);
}

// Closure of k[gens] in the normalization, where gens[g][i] is the polynomial image of generator g
// on branch i. The conductor is accepted at truncation D once D >= 2 max(d, 1) on every branch,
// where d is the depth seen at D: then A ∩ t^d is an ideal whose image fills t^d / t^D, and
// t^D ⊆ t^(2d) ⊆ (A ∩ t^d)^2 + t^(D+d) forces t^D ⊆ A.
template <ExactField K>
BranchAlgebra<K> parametrized_ring(const K& k, const std::vector<std::vector<Vec<K>>>& gens, Settings s = {}) {
  require(!gens.empty(), ErrorKind::configuration, "parametrization needs at least one generator");
  const std::size_t n = gens.front().size();
  require(n >= 1, ErrorKind::configuration, "parametrization needs at least one branch");
  for (const auto& g : gens)
    require(g.size() == n, ErrorKind::configuration, "generators disagree on the branch count");
  for (int D = 4;; D *= 2) {
    const int cap = std::max(1, s.caps.degree);
    require(D <= 4 * cap, ErrorKind::not_finite_conductor,
            "no conductor at or below degree " + std::to_string(cap));
    const Levels lv(n, D);
    std::vector<Vec<K>> flats;
    for (const auto& g : gens) {
      Vec<K> f;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec<K>& c = g[i];
        for (int j = 0; j < D; ++j) f.push_back(static_cast<std::size_t>(j) < c.size() ? c[j] : k.zero());
      }
      flats.push_back(std::move(f));
    }
    Subspace<K> base(k, static_cast<std::size_t>(total(lv)));
    base.insert(one_flat(k, lv));
    const Lattice<K> l(k, lv, saturate_products(k, lv, base, flats));
    const Levels d = l.depth();
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) ok = ok && D >= 2 * std::max(d[i], 1);
    if (!ok) continue;
    int worst = 0;
    for (int x : d) worst = std::max(worst, x);
    require(worst <= cap, ErrorKind::not_finite_conductor,
            "conductor exponent " + std::to_string(worst) + " exceeds the degree cap " + std::to_string(cap));
    return BranchAlgebra<K>::from_lattice(l, s);
  }
}

// Plane curve with linear branches X = a_i t, Y = b_i t.
template <ExactField K>
BranchAlgebra<K> lines_ring(const K& k, const std::vector<std::pair<typename K::value_type, typename K::value_type>>& dirs,
                            Settings s = {}) {
  require(!dirs.empty(), ErrorKind::configuration, "no line directions");
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    require(!(k.is_zero(dirs[i].first) && k.is_zero(dirs[i].second)), ErrorKind::degenerate_branch,
            "zero direction vector");
    for (std::size_t j = i + 1; j < dirs.size(); ++j)
      require(!k.is_zero(k.sub(k.mul(dirs[i].first, dirs[j].second), k.mul(dirs[j].first, dirs[i].second))),
              ErrorKind::degenerate_branch,
              "directions " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
  }
  std::vector<Vec<K>> x, y;
  for (const auto& d : dirs) {
    x.push_back({k.zero(), d.first});
    y.push_back({k.zero(), d.second});
  }
  return parametrized_ring(k, {x, y}, s);
}

template <ExactField K>
BranchAlgebra<K> product_ring(const BranchAlgebra<K>& a, const BranchAlgebra<K>& b) {
  const K& k = a.field();
  Levels lv = a.conductor();
  lv.insert(lv.end(), b.conductor().begin(), b.conductor().end());
  const std::size_t na = static_cast<std::size_t>(total(a.conductor()));
  const std::size_t total_dim = static_cast<std::size_t>(total(lv));
  std::vector<Vec<K>> rows;
  for (const auto& r : a.lattice().rows()) {
    Vec<K> v(total_dim, k.zero());
    std::copy(r.begin(), r.end(), v.begin());
    rows.push_back(std::move(v));
  }
  for (const auto& r : b.lattice().rows()) {
    Vec<K> v(total_dim, k.zero());
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(na));
    rows.push_back(std::move(v));
  }
  return a.derive(Lattice<K>::from_rows(k, lv, rows));
}

// k(1,1) + m_A x 0 + 0 x m_B for local A and B.
template <ExactField K>
BranchAlgebra<K> fiber_product_ring(const BranchAlgebra<K>& a, const BranchAlgebra<K>& b) {
  require(a.is_local() && b.is_local(), ErrorKind::domain, "fiber product over k needs local factors");
  const K& k = a.field();
  const Lattice<K> ma = a.radical().canonical(), mb = b.radical().canonical();
  Levels lv = ma.level();
  lv.insert(lv.end(), mb.level().begin(), mb.level().end());
  const std::size_t na = static_cast<std::size_t>(total(ma.level()));
  const std::size_t total_dim = static_cast<std::size_t>(total(lv));
  std::vector<Vec<K>> rows{one_flat(k, lv)};
  for (const auto& r : ma.rows()) {
    Vec<K> v(total_dim, k.zero());
    std::copy(r.begin(), r.end(), v.begin());
    rows.push_back(std::move(v));
  }
  for (const auto& r : mb.rows()) {
    Vec<K> v(total_dim, k.zero());
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(na));
    rows.push_back(std::move(v));
  }
  return a.derive(Lattice<K>::from_rows(k, lv, rows));
}

// A ⋈ I = {(a, b) : a in A, a - b in I} on 2n branches.
template <ExactField K>
BranchAlgebra<K> duplication_ring(const BranchAlgebra<K>& a, const Lattice<K>& ideal) {
  const K& k = a.field();
  const Levels d = zip_max(ideal.depth(), a.conductor());
  Levels lv = d;
  lv.insert(lv.end(), d.begin(), d.end());
  const std::size_t half = static_cast<std::size_t>(total(d));
  std::vector<Vec<K>> rows;
  const Lattice<K> ad = a.lattice().at_level(d), id = ideal.at_level(d);
  for (const auto& r : ad.rows()) {
    Vec<K> v(2 * half, k.zero());
    std::copy(r.begin(), r.end(), v.begin());
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(half));
    rows.push_back(std::move(v));
  }
  for (const auto& r : id.rows()) {
    Vec<K> v(2 * half, k.zero());
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(half));
    rows.push_back(std::move(v));
  }
  return a.derive(Lattice<K>::from_rows(k, lv, rows));
}

// Image of A in the product of the selected branches.
template <ExactField K>
BranchAlgebra<K> projection_ring(const BranchAlgebra<K>& a, const std::vector<std::size_t>& keep) {
  const K& k = a.field();
  const Levels& c = a.conductor();
  const auto off = offsets_of(c);
  Levels lv;
  for (std::size_t i : keep) {
    require(i < c.size(), ErrorKind::configuration, "branch index out of range");
    lv.push_back(c[i]);
  }
  std::vector<Vec<K>> rows;
  for (const auto& r : a.lattice().rows()) {
    Vec<K> v;
    for (std::size_t i : keep)
      v.insert(v.end(), r.begin() + static_cast<std::ptrdiff_t>(off[i]), r.begin() + static_cast<std::ptrdiff_t>(off[i + 1]));
    rows.push_back(std::move(v));
  }
  return a.derive(Lattice<K>::from_rows(k, lv, rows));
}

}  // namespace arfkit
