#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arfkit/caps.hpp"
#include "arfkit/element.hpp"
#include "arfkit/lattice.hpp"

namespace arfkit {

// Engine settings carried by every ring and inherited by rings derived from it.
struct Settings {
  Caps caps;
  int extra_truncation = 0;  // added to every working truncation level
};

// Smallest subspace containing `base` and closed under multiplication by `gens`, at level lv.
// With base spanned by 1 this is the algebra generated; with base an algebra it is base[gens].
template <ExactField K>
Subspace<K> saturate_products(const K& k, const Levels& lv, Subspace<K> base,
                              const std::vector<Vec<K>>& gens) {
  std::vector<Vec<K>> frontier = base.basis();
  while (!frontier.empty()) {
    std::vector<Vec<K>> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        Vec<K> p = mul_flat(k, f, lv, g, lv, lv);
        base.reduce(p);
        if (is_zero_flat(k, p)) continue;
        base.insert(p);
        next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return base;
}

// A finite-conductor subalgebra A of the normalization. The lattice is stored at its depth,
// which is the conductor exponent vector.
template <ExactField K>
class BranchAlgebra {
 public:
  using value_type = typename K::value_type;
  using Vector = Vec<K>;

  // Validates that L contains 1 and is closed under multiplication.
  static BranchAlgebra from_lattice(const Lattice<K>& l, Settings settings = {},
                                    std::optional<Levels> truncation_override = std::nullopt) {
    const K& k = l.field();
    const Lattice<K> c = l.canonical();
    const Levels& d = c.level();
    require(c.contains(one_flat(k, d), d), ErrorKind::domain, "subspace does not contain 1");
    for (std::size_t a = 0; a < c.rows().size(); ++a)
      for (std::size_t b = a; b < c.rows().size(); ++b)
        require(c.span().contains(mul_flat(k, c.rows()[a], d, c.rows()[b], d, d)), ErrorKind::domain,
                "subspace is not closed under multiplication");
    return BranchAlgebra(c, settings, std::move(truncation_override));
  }

  static BranchAlgebra normalization(const K& field, std::size_t branches, Settings settings = {}) {
    return BranchAlgebra(Lattice<K>::whole(field, branches), settings, std::nullopt);
  }

  const K& field() const { return lat_.field(); }
  std::size_t branches() const { return lat_.branches(); }
  const Levels& conductor() const { return lat_.level(); }
  const Levels& truncation() const { return truncation_; }
  const Lattice<K>& lattice() const { return lat_; }
  Lattice<K> working() const { return lat_.at_level(truncation_); }
  const Settings& settings() const { return settings_; }
  const Caps& caps() const { return settings_.caps; }
  const std::optional<Levels>& truncation_override() const { return override_; }

  bool is_normalization() const { return total(conductor()) == 0; }

  // dim_k of normalization / A.
  int codimension() const { return total(conductor()) - static_cast<int>(lat_.span().dim()); }

  bool contains(const BranchElement<K>& x) const {
    require(x.branches() == branches(), ErrorKind::configuration, "element has the wrong branch count");
    const Levels p = x.precision();
    require(leq(conductor(), p), ErrorKind::configuration,
            "element truncation " + format_levels(p) + " is below the conductor " + format_levels(conductor()));
    return lat_.contains(x.flat(conductor()), conductor());
  }

  bool contains(const Vector& v, const Levels& lv) const { return lat_.contains(v, lv); }

  // Branch classes sharing a maximal ideal (branches i, j are linked when a_i(0) = a_j(0) on A).
  const std::vector<std::vector<std::size_t>>& residue_classes() const { return classes_; }
  bool is_local() const { return classes_.size() == 1; }

  // Jacobson radical: elements with vanishing constant term on every branch.
  const Lattice<K>& radical() const { return radical_; }
  const std::vector<Vector>& radical_generators() const { return radical_gens_; }
  const Levels& radical_generators_level() const { return radical_level_; }

  BranchAlgebra with_settings(Settings s) const { return BranchAlgebra(lat_, s, override_); }

  // A ring with the same settings (used for overrings and combinations).
  BranchAlgebra derive(const Lattice<K>& l) const { return from_lattice(l, settings_); }

  bool operator==(const BranchAlgebra& o) const { return lat_ == o.lat_; }
  bool includes(const BranchAlgebra& o) const { return lat_.includes(o.lat_); }

 private:
  BranchAlgebra(Lattice<K> l, Settings settings, std::optional<Levels> override)
      : lat_(std::move(l)), settings_(settings), override_(std::move(override)), radical_(lat_) {
    const K& k = lat_.field();
    const std::size_t n = lat_.branches();
    const Levels& c = lat_.level();
    truncation_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      truncation_[i] = 2 * c[i] + 2;
      if (override_) {
        require(override_->size() == n, ErrorKind::configuration, "truncation override has the wrong length");
        truncation_[i] = std::max(truncation_[i], (*override_)[i]);
      }
      truncation_[i] += settings_.extra_truncation;
    }
    // Residue structure from constant terms.
    const Lattice<K> one_up = lat_.at_level(zip_max(c, Levels(n, 1)));
    const auto off = offsets_of(one_up.level());
    std::vector<int> cls(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (cls[i] >= 0) continue;
      cls[i] = static_cast<int>(classes_.size());
      classes_.push_back({i});
      for (std::size_t j = i + 1; j < n; ++j) {
        if (cls[j] >= 0) continue;
        bool linked = true;
        for (const auto& r : one_up.rows())
          if (!k.is_zero(k.sub(r[off[i]], r[off[j]]))) {
            linked = false;
            break;
          }
        if (linked) {
          cls[j] = cls[i];
          classes_.back().push_back(j);
        }
      }
    }
    radical_ = lattice_restrict_valuation(lat_, Levels(n, 1));
    // Module generators of the radical: a basis of J / J^2.
    const Lattice<K> j2 = lattice_product(radical_, radical_);
    radical_level_ = zip_max(j2.level(), radical_.level());
    const Lattice<K> jj = radical_.at_level(radical_level_);
    Subspace<K> acc = j2.at_level(radical_level_).span();
    for (const auto& r : jj.rows())
      if (acc.insert(r)) radical_gens_.push_back(r);
  }

  Lattice<K> lat_;
  Settings settings_;
  std::optional<Levels> override_;
  Levels truncation_;
  std::vector<std::vector<std::size_t>> classes_;
  Lattice<K> radical_;
  std::vector<Vector> radical_gens_;
  Levels radical_level_;
};

}  // namespace arfkit
