#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arfkit/lattice.hpp"
#include "arfkit/series.hpp"

namespace arfkit {

// An element of the normalization: one truncated series per branch.
template <ExactField K>
class BranchElement {
 public:
  using value_type = typename K::value_type;

  BranchElement(K field, std::vector<TruncSeries<K>> components)
      : field_(std::move(field)), comps_(std::move(components)) {
    for (const auto& c : comps_)
      require(c.field() == field_, ErrorKind::configuration, "branch components over different fields");
  }

  static BranchElement from_flat(const K& field, const Vec<K>& v, const Levels& lv) {
    const auto off = offsets_of(lv);
    std::vector<TruncSeries<K>> comps;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      Vec<K> c(v.begin() + static_cast<std::ptrdiff_t>(off[i]), v.begin() + static_cast<std::ptrdiff_t>(off[i + 1]));
      comps.emplace_back(field, std::move(c), static_cast<std::size_t>(std::max(lv[i], 1)));
    }
    return BranchElement(field, std::move(comps));
  }

  const K& field() const { return field_; }
  std::size_t branches() const { return comps_.size(); }
  const std::vector<TruncSeries<K>>& components() const { return comps_; }

  Levels precision() const {
    Levels p;
    for (const auto& c : comps_) p.push_back(static_cast<int>(c.truncation()));
    return p;
  }

  // Polynomial lift, truncated or zero-padded to the given levels.
  Vec<K> flat(const Levels& to) const {
    require(to.size() == comps_.size(), ErrorKind::configuration, "branch count mismatch");
    Vec<K> out;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      for (int j = 0; j < to[i]; ++j)
        out.push_back(static_cast<std::size_t>(j) < comps_[i].truncation() ? comps_[i].coeff(j) : field_.zero());
    return out;
  }

  std::vector<std::optional<int>> valuation() const {
    std::vector<std::optional<int>> v;
    for (const auto& c : comps_) {
      const auto x = c.valuation();
      v.push_back(x ? std::optional<int>(static_cast<int>(*x)) : std::nullopt);
    }
    return v;
  }

  bool is_nonzerodivisor() const {
    for (const auto& c : comps_)
      if (c.is_zero()) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i].to_string();
    return s + ")";
  }

 private:
  K field_;
  std::vector<TruncSeries<K>> comps_;
};

}  // namespace arfkit
