#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/error.hpp"
#include "arfkit/field.hpp"
#include "arfkit/series.hpp"
#include "arfkit/subspace.hpp"

namespace arfkit {

// Per-branch exponent vector (truncation levels, valuation vectors, conductor exponents).
using Levels = std::vector<int>;

inline int total(const Levels& l) { return std::accumulate(l.begin(), l.end(), 0); }

inline Levels zip_max(const Levels& a, const Levels& b) {
  Levels r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b.at(i));
  return r;
}

inline Levels zip_min(const Levels& a, const Levels& b) {
  Levels r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b.at(i));
  return r;
}

inline Levels zip_add(const Levels& a, const Levels& b) {
  Levels r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b.at(i);
  return r;
}

inline Levels zip_sub(const Levels& a, const Levels& b) {
  Levels r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b.at(i);
  return r;
}

inline Levels shifted(const Levels& a, int s) {
  Levels r = a;
  for (auto& x : r) x += s;
  return r;
}

inline bool leq(const Levels& a, const Levels& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b.at(i)) return false;
  return true;
}

inline std::string format_levels(const Levels& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + ")";
}

inline std::vector<std::size_t> offsets_of(const Levels& l) {
  std::vector<std::size_t> off(l.size() + 1, 0);
  for (std::size_t i = 0; i < l.size(); ++i) off[i + 1] = off[i] + static_cast<std::size_t>(l[i]);
  return off;
}

// Flat vectors: the concatenation over branches of the first level[i] coefficients. A flat vector
// also names the element of the normalization whose components are these polynomials.
template <ExactField K>
Vec<K> resize_flat(const K& k, const Vec<K>& v, const Levels& from, const Levels& to) {
  const auto fo = offsets_of(from), to_off = offsets_of(to);
  Vec<K> out(to_off.back(), k.zero());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const int n = std::min(from[i], to[i]);
    for (int j = 0; j < n; ++j) out[to_off[i] + j] = v[fo[i] + j];
  }
  return out;
}

template <ExactField K>
Vec<K> monomial_flat(const K& k, const Levels& lv, std::size_t branch, int degree,
                     std::optional<typename K::value_type> coeff = std::nullopt) {
  const auto off = offsets_of(lv);
  Vec<K> out(off.back(), k.zero());
  if (degree < lv[branch]) out[off[branch] + degree] = coeff ? *coeff : k.one();
  return out;
}

template <ExactField K>
Vec<K> one_flat(const K& k, const Levels& lv) {
  const auto off = offsets_of(lv);
  Vec<K> out(off.back(), k.zero());
  for (std::size_t i = 0; i < lv.size(); ++i)
    if (lv[i] > 0) out[off[i]] = k.one();
  return out;
}

// Branchwise product of a (levels la) and b (levels lb) modulo t^out.
template <ExactField K>
Vec<K> mul_flat(const K& k, const Vec<K>& a, const Levels& la, const Vec<K>& b, const Levels& lb,
                const Levels& out) {
  const auto oa = offsets_of(la), ob = offsets_of(lb), oo = offsets_of(out);
  Vec<K> r(oo.back(), k.zero());
  for (std::size_t i = 0; i < out.size(); ++i)
    detail::mul_accumulate(k, a.data() + oa[i], static_cast<std::size_t>(la[i]), b.data() + ob[i],
                           static_cast<std::size_t>(lb[i]), r.data() + oo[i],
                           static_cast<std::size_t>(out[i]));
  return r;
}

// Per-branch valuations; nullopt where the component vanishes below its level.
template <ExactField K>
std::vector<std::optional<int>> valuations_flat(const K& k, const Vec<K>& v, const Levels& lv) {
  const auto off = offsets_of(lv);
  std::vector<std::optional<int>> out(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i)
    for (int j = 0; j < lv[i]; ++j)
      if (!k.is_zero(v[off[i] + j])) {
        out[i] = j;
        break;
      }
  return out;
}

template <ExactField K>
bool is_zero_flat(const K& k, const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return k.is_zero(x); });
}

// A k-subspace L of the normalization (product of n copies of k[[t]]) containing t^level.
// Stored as the image of L modulo t^level.
template <ExactField K>
class Lattice {
 public:
  using value_type = typename K::value_type;
  using Vector = Vec<K>;

  Lattice(K field, Levels level, Subspace<K> span)
      : field_(std::move(field)), level_(std::move(level)), span_(std::move(span)) {
    for (int l : level_) require(l >= 0, ErrorKind::configuration, "negative lattice level");
    require(span_.ambient_dim() == static_cast<std::size_t>(total(level_)), ErrorKind::configuration,
            "lattice span has the wrong ambient dimension");
  }

  static Lattice from_rows(const K& field, const Levels& level, const std::vector<Vector>& rows) {
    return Lattice(field, level, rref(field, static_cast<std::size_t>(total(level)), rows));
  }

  static Lattice tail(const K& field, const Levels& depth) {
    return Lattice(field, depth, Subspace<K>(field, static_cast<std::size_t>(total(depth))));
  }

  static Lattice whole(const K& field, std::size_t branches) { return tail(field, Levels(branches, 0)); }

  const K& field() const { return field_; }
  std::size_t branches() const { return level_.size(); }
  const Levels& level() const { return level_; }
  const Subspace<K>& span() const { return span_; }
  const std::vector<Vector>& rows() const { return span_.basis(); }
  std::size_t offset(std::size_t branch) const { return offsets_of(level_)[branch]; }

  // Least d with t^d contained in L.
  Levels depth() const {
    Levels d = level_;
    const auto off = offsets_of(level_);
    for (std::size_t i = 0; i < level_.size(); ++i) {
      while (d[i] > 0) {
        Vector e(span_.ambient_dim(), field_.zero());
        e[off[i] + d[i] - 1] = field_.one();
        if (!span_.contains(e)) break;
        --d[i];
      }
    }
    return d;
  }

  // Same lattice represented at level `to`; `to` must be at least the depth.
  Lattice at_level(const Levels& to) const {
    require(to.size() == level_.size(), ErrorKind::configuration, "branch count mismatch");
    if (to == level_) return *this;
    Subspace<K> s(field_, static_cast<std::size_t>(total(to)));
    for (const auto& r : span_.basis()) s.insert(resize_flat(field_, r, level_, to));
    for (std::size_t i = 0; i < to.size(); ++i)
      for (int j = level_[i]; j < to[i]; ++j) s.insert(monomial_flat(field_, to, i, j));
    Lattice out(field_, to, std::move(s));
    if (!leq(level_, to)) {
      require(leq(depth(), to), ErrorKind::truncation_too_small,
              "trimming a lattice below its depth " + format_levels(depth()));
    }
    return out;
  }

  Lattice canonical() const { return at_level(depth()); }

  // Image of L modulo t^to, for any `to` (lossy when `to` is below the depth).
  Subspace<K> image_mod(const Levels& to) const {
    const Levels up = zip_max(to, level_);
    const Lattice big = at_level(up);
    Subspace<K> s(field_, static_cast<std::size_t>(total(to)));
    for (const auto& r : big.rows()) s.insert(resize_flat(field_, r, up, to));
    return s;
  }

  // Membership of the element named by flat vector v at levels lv.
  bool contains(const Vector& v, const Levels& lv) const {
    return span_.contains(resize_flat(field_, v, lv, level_));
  }

  bool includes(const Lattice& o) const {
    const Levels l = zip_max(level_, o.level_);
    const Lattice a = at_level(l), b = o.at_level(l);
    return a.span_.includes(b.span_);
  }

  bool operator==(const Lattice& o) const {
    if (level_.size() != o.level_.size()) return false;
    const Levels l = zip_max(level_, o.level_);
    return at_level(l).span_ == o.at_level(l).span_;
  }

  // Least valuation attained on each branch by elements of L.
  Levels profile() const {
    const Levels d = depth();
    Levels p = d;
    const auto off = offsets_of(level_);
    for (const auto& r : span_.basis())
      for (std::size_t i = 0; i < level_.size(); ++i)
        for (int j = 0; j < std::min(level_[i], p[i]); ++j)
          if (!field_.is_zero(r[off[i] + j])) {
            p[i] = j;
            break;
          }
    return p;
  }

  std::size_t dim_at(const Levels& lv) const { return at_level(lv).span_.dim(); }

 private:
  K field_;
  Levels level_;
  Subspace<K> span_;
};

template <ExactField K>
Lattice<K> lattice_sum(const Lattice<K>& a, const Lattice<K>& b) {
  const Levels l = zip_max(a.level(), b.level());
  return Lattice<K>(a.field(), l, sum(a.at_level(l).span(), b.at_level(l).span())).canonical();
}

template <ExactField K>
Lattice<K> lattice_intersect(const Lattice<K>& a, const Lattice<K>& b) {
  const Levels l = zip_max(a.level(), b.level());
  return Lattice<K>(a.field(), l, intersect(a.at_level(l).span(), b.at_level(l).span())).canonical();
}

// Intersection with t^v of the normalization.
template <ExactField K>
Lattice<K> lattice_restrict_valuation(const Lattice<K>& a, const Levels& v) {
  return lattice_intersect(a, Lattice<K>::tail(a.field(), v));
}

// {s * g : s in L, g in gens} plus t^(depth(L) + extra_depth); exact when the k-span of these
// products together with that tail is the product lattice.
template <ExactField K>
Lattice<K> lattice_product_with(const Lattice<K>& l, const std::vector<Vec<K>>& gens,
                                const Levels& gens_level, const Levels& extra_depth,
                                const Levels& floor = {}) {
  const K& k = l.field();
  Levels d = zip_add(l.depth(), extra_depth);
  if (!floor.empty()) d = zip_max(d, floor);
  const Lattice<K> big = l.at_level(zip_max(l.depth(), d));
  Subspace<K> s(k, static_cast<std::size_t>(total(d)));
  for (const auto& g : gens)
    for (const auto& r : big.rows()) s.insert(mul_flat(k, r, big.level(), g, gens_level, d));
  return Lattice<K>(k, d, std::move(s));
}

// Full k-bilinear product L1 * L2.
template <ExactField K>
Lattice<K> lattice_product(const Lattice<K>& a, const Lattice<K>& b, const Levels& floor = {}) {
  const Levels db = b.depth();
  Levels d = zip_add(a.depth(), db);
  if (!floor.empty()) d = zip_max(d, floor);
  const Lattice<K> bb = b.at_level(zip_max(db, d));
  return lattice_product_with(a, bb.rows(), bb.level(), db, floor);
}

// a * L for a non-zerodivisor a given by flat vector at levels la.
template <ExactField K>
Lattice<K> lattice_times(const Lattice<K>& l, const Vec<K>& a, const Levels& la, const Levels& floor = {}) {
  const auto vals = valuations_flat(l.field(), a, la);
  Levels w(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    require(vals[i].has_value(), ErrorKind::no_nonzerodivisor, "multiplier vanishes on a branch");
    w[i] = *vals[i];
  }
  return lattice_product_with(l, std::vector<Vec<K>>{a}, la, w, floor);
}

// L / a for a non-zerodivisor a with L contained in a times the normalization.
template <ExactField K>
Lattice<K> lattice_divide(const Lattice<K>& l, const Vec<K>& a, const Levels& la) {
  const K& k = l.field();
  const auto vals = valuations_flat(k, a, la);
  const std::size_t n = vals.size();
  Levels w(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(vals[i].has_value(), ErrorKind::no_nonzerodivisor, "divisor vanishes on a branch");
    w[i] = *vals[i];
  }
  const Lattice<K> c = l.canonical();
  const Levels d = c.level();
  require(leq(c.profile(), d) && leq(w, c.profile()), ErrorKind::domain,
          "lattice is not divisible by the given element");
  const Levels q = zip_sub(d, w);
  const auto oa = offsets_of(la), od = offsets_of(d), oq = offsets_of(q);
  // Inverse of the unit part a / t^w modulo t^q on each branch.
  std::vector<Vec<K>> uinv(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<K> u(static_cast<std::size_t>(q[i]), k.zero());
    for (int j = 0; j < q[i] && w[i] + j < la[i]; ++j) u[j] = a[oa[i] + w[i] + j];
    uinv[i] = detail::invert_unit(k, u.data(), u.size());
  }
  Subspace<K> s(k, static_cast<std::size_t>(total(q)));
  for (const auto& r : c.rows()) {
    Vec<K> out(oq.back(), k.zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < w[i]; ++j)
        require(k.is_zero(r[od[i] + j]), ErrorKind::domain, "lattice is not divisible by the given element");
      detail::mul_accumulate(k, r.data() + od[i] + w[i], static_cast<std::size_t>(q[i]), uinv[i].data(),
                             uinv[i].size(), out.data() + oq[i], static_cast<std::size_t>(q[i]));
    }
    s.insert(std::move(out));
  }
  return Lattice<K>(k, q, std::move(s));
}

// {z : z * L2 contained in L1}, computed at level max(depth(L1), floor).
template <ExactField K>
Lattice<K> lattice_colon(const Lattice<K>& l1, const Lattice<K>& l2, const Levels& floor = {}) {
  const K& k = l1.field();
  Levels d = l1.depth();
  if (!floor.empty()) d = zip_max(d, floor);
  const Lattice<K> target = l1.at_level(d);
  const Subspace<K> gens = l2.image_mod(d);
  const std::size_t n = d.size();
  const auto off = offsets_of(d);
  const std::size_t dim = off.back();
  const std::size_t m = gens.dim();
  // Images of each monomial z = t^j e_i under z -> (z g mod L1)_g.
  std::vector<Vec<K>> images;
  images.reserve(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d[i]; ++j) {
      Vec<K> img(m * dim, k.zero());
      for (std::size_t g = 0; g < m; ++g) {
        const auto& gv = gens.basis()[g];
        Vec<K> prod(dim, k.zero());
        for (int s = 0; s + j < d[i]; ++s) prod[off[i] + s + j] = gv[off[i] + s];
        target.span().reduce(prod);
        std::copy(prod.begin(), prod.end(), img.begin() + static_cast<std::ptrdiff_t>(g * dim));
      }
      images.push_back(std::move(img));
    }
  }
  return Lattice<K>(k, d, kernel(k, m * dim, images));
}

}  // namespace arfkit
