#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/error.hpp"
#include "arfkit/field.hpp"

namespace arfkit {

template <ExactField K>
using Vec = std::vector<typename K::value_type>;

namespace detail {

template <ExactField K>
void axpy(const K& k, Vec<K>& y, const typename K::value_type& a, const Vec<K>& x) {
  // y -= a * x
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!k.is_zero(x[i])) y[i] = k.sub(y[i], k.mul(a, x[i]));
}

template <ExactField K>
std::optional<std::size_t> leading_index(const K& k, const Vec<K>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!k.is_zero(v[i])) return i;
  return std::nullopt;
}

}  // namespace detail

// A k-subspace of k^n held as a reduced row echelon basis. Equal subspaces have identical bases.
template <ExactField K>
class Subspace {
 public:
  using value_type = typename K::value_type;
  using Vector = Vec<K>;

  Subspace(K field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  static Subspace whole(K field, std::size_t ambient) {
    Subspace s(field, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      Vector e(ambient, field.zero());
      e[i] = field.one();
      s.rows_.push_back(std::move(e));
      s.pivots_.push_back(i);
    }
    return s;
  }

  const K& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vector zero_vector() const { return Vector(ambient_, field_.zero()); }

  // Replaces v by its canonical residue modulo this subspace (zero at every pivot column).
  void reduce(Vector& v) const {
    check_length(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const value_type c = v[pivots_[r]];
      if (!field_.is_zero(c)) detail::axpy(field_, v, c, rows_[r]);
    }
  }

  bool contains(const Vector& v) const {
    Vector w = v;
    reduce(w);
    return !detail::leading_index(field_, w).has_value();
  }

  // Adds v to the span; returns true when the dimension grew.
  bool insert(Vector v) {
    reduce(v);
    const auto lead = detail::leading_index(field_, v);
    if (!lead) return false;
    const std::size_t q = *lead;
    const value_type s = field_.inv(v[q]);
    for (auto& x : v) x = field_.mul(x, s);
    for (auto& row : rows_) {
      const value_type c = row[q];
      if (!field_.is_zero(c)) detail::axpy(field_, row, c, v);
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), q) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, q);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  bool includes(const Subspace& other) const {
    require(other.ambient_ == ambient_, ErrorKind::configuration, "ambient dimensions differ");
    for (const auto& r : other.rows_)
      if (!contains(r)) return false;
    return true;
  }

  // dim(this / sub); sub must be contained in this.
  std::size_t quotient_dim(const Subspace& sub) const {
    require(includes(sub), ErrorKind::domain, "quotient of non-nested subspaces");
    return dim() - sub.dim();
  }

  bool operator==(const Subspace& o) const {
    if (ambient_ != o.ambient_ || pivots_ != o.pivots_) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t i = 0; i < ambient_; ++i)
        if (!field_.is_zero(field_.sub(rows_[r][i], o.rows_[r][i]))) return false;
    return true;
  }

 private:
  void check_length(const Vector& v) const {
    require(v.size() == ambient_, ErrorKind::configuration,
            "vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                std::to_string(ambient_));
  }

  K field_;
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

template <ExactField K>
Subspace<K> rref(const K& field, std::size_t ambient, const std::vector<Vec<K>>& rows) {
  Subspace<K> s(field, ambient);
  for (const auto& r : rows) {
    require(r.size() == ambient, ErrorKind::configuration, "ragged rows in rref");
    s.insert(r);
  }
  return s;
}

template <ExactField K>
Subspace<K> rref(const K& field, const std::vector<Vec<K>>& rows) {
  require(!rows.empty(), ErrorKind::configuration, "rref of an empty row list needs an ambient dimension");
  return rref(field, rows.front().size(), rows);
}

// Incremental elimination that remembers how each echelon row was formed from the inputs.
template <ExactField K>
class Eliminator {
 public:
  using value_type = typename K::value_type;
  using Vector = Vec<K>;

  Eliminator(K field, std::size_t length) : field_(std::move(field)), length_(length) {}

  std::size_t inputs() const { return count_; }
  std::size_t rank() const { return rows_.size(); }

  // Adds the image y of the next input; returns a kernel combination if y is dependent.
  std::optional<Vector> add(Vector y) {
    require(y.size() == length_, ErrorKind::configuration, "eliminator row length mismatch");
    Vector combo(count_ + 1, field_.zero());
    combo[count_] = field_.one();
    for (auto& c : combos_) c.push_back(field_.zero());
    ++count_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const value_type c = y[pivots_[r]];
      if (field_.is_zero(c)) continue;
      detail::axpy(field_, y, c, rows_[r]);
      detail::axpy(field_, combo, c, combos_[r]);
    }
    const auto lead = detail::leading_index(field_, y);
    if (!lead) return combo;
    const value_type s = field_.inv(y[*lead]);
    for (auto& x : y) x = field_.mul(x, s);
    for (auto& x : combo) x = field_.mul(x, s);
    rows_.push_back(std::move(y));
    combos_.push_back(std::move(combo));
    pivots_.push_back(*lead);
    return std::nullopt;
  }

  // Coefficients c with sum_j c_j * input_j = target, if target lies in the span of the inputs.
  std::optional<Vector> solve(Vector target) const {
    require(target.size() == length_, ErrorKind::configuration, "eliminator target length mismatch");
    Vector combo(count_, field_.zero());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const value_type c = target[pivots_[r]];
      if (field_.is_zero(c)) continue;
      detail::axpy(field_, target, c, rows_[r]);
      detail::axpy(field_, combo, field_.neg(c), combos_[r]);
    }
    if (detail::leading_index(field_, target)) return std::nullopt;
    return combo;
  }

 private:
  K field_;
  std::size_t length_;
  std::size_t count_ = 0;
  std::vector<Vector> rows_;
  std::vector<Vector> combos_;
  std::vector<std::size_t> pivots_;
};

// Kernel of the map k^n -> k^m sending e_j to images[j], as a subspace of k^n.
template <ExactField K>
Subspace<K> kernel(const K& field, std::size_t m, const std::vector<Vec<K>>& images) {
  Eliminator<K> elim(field, m);
  std::vector<Vec<K>> relations;
  for (const auto& y : images) {
    if (auto rel = elim.add(y)) relations.push_back(std::move(*rel));
  }
  Subspace<K> out(field, images.size());
  for (auto& rel : relations) {
    rel.resize(images.size(), field.zero());
    out.insert(std::move(rel));
  }
  return out;
}

template <ExactField K>
Subspace<K> sum(const Subspace<K>& u, const Subspace<K>& v) {
  require(u.ambient_dim() == v.ambient_dim(), ErrorKind::configuration, "ambient dimensions differ");
  Subspace<K> out = u;
  for (const auto& r : v.basis()) out.insert(r);
  return out;
}

template <ExactField K>
Subspace<K> intersect(const Subspace<K>& u, const Subspace<K>& v) {
  require(u.ambient_dim() == v.ambient_dim(), ErrorKind::configuration, "ambient dimensions differ");
  const K& k = u.field();
  std::vector<Vec<K>> residues;
  residues.reserve(u.dim());
  for (const auto& r : u.basis()) {
    Vec<K> w = r;
    v.reduce(w);
    residues.push_back(std::move(w));
  }
  const Subspace<K> rel = kernel(k, u.ambient_dim(), residues);
  Subspace<K> out(k, u.ambient_dim());
  for (const auto& alpha : rel.basis()) {
    Vec<K> x(u.ambient_dim(), k.zero());
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (!k.is_zero(alpha[j])) detail::axpy(k, x, k.neg(alpha[j]), u.basis()[j]);
    out.insert(std::move(x));
  }
  return out;
}

}  // namespace arfkit
