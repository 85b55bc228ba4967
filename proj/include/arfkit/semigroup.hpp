#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/error.hpp"

namespace arfkit {

// A numerical semigroup stored as a membership bitmap on [0, F]; everything above F is a member.
class NumericalSemigroup {
 public:
  static NumericalSemigroup naturals() { return NumericalSemigroup(std::vector<bool>{}); }

  static NumericalSemigroup from_generators(std::vector<int> gens) {
    require(!gens.empty(), ErrorKind::configuration, "empty generator list");
    int g = 0;
    for (int a : gens) {
      require(a > 0, ErrorKind::configuration, "generators must be positive, got " + std::to_string(a));
      g = std::gcd(g, a);
    }
    require(g == 1, ErrorKind::not_a_numerical_semigroup,
            "generators have gcd " + std::to_string(g));
    std::sort(gens.begin(), gens.end());
    const int e = gens.front();
    std::vector<bool> member{true};
    int run = 1;
    // Stop once e consecutive members appear: every larger integer is then a member.
    for (int x = 1; run < e; ++x) {
      bool in = false;
      for (int a : gens)
        if (a <= x && member[x - a]) {
          in = true;
          break;
        }
      member.push_back(in);
      run = in ? run + 1 : 0;
    }
    int last_gap = static_cast<int>(member.size()) - 1;
    while (last_gap >= 0 && member[last_gap]) --last_gap;
    member.resize(last_gap + 1);
    return NumericalSemigroup(std::move(member));
  }

  // window[x] tells whether x is a member, for x < window.size(); larger integers are members.
  static NumericalSemigroup from_membership(std::vector<bool> window) {
    require(window.empty() || window[0], ErrorKind::not_a_numerical_semigroup, "0 must be a member");
    const int n = static_cast<int>(window.size());
    auto in = [&](int x) { return x >= n || window[x]; };
    for (int x = 1; x < n; ++x)
      for (int y = x; x + y < n; ++y)
        require(!(in(x) && in(y)) || in(x + y), ErrorKind::not_a_numerical_semigroup,
                "membership window is not closed under addition");
    int last_gap = n - 1;
    while (last_gap >= 0 && window[last_gap]) --last_gap;
    window.resize(last_gap + 1);
    return NumericalSemigroup(std::move(window));
  }

  bool contains(long long x) const {
    if (x < 0) return false;
    if (x > frobenius()) return true;
    return member_[x];
  }

  int frobenius() const { return static_cast<int>(member_.size()) - 1; }
  int conductor() const { return frobenius() + 1; }
  int multiplicity() const { return multiplicity_; }
  const std::vector<int>& generators() const { return generators_; }
  bool is_naturals() const { return member_.empty(); }

  // Members in [0, F+1].
  std::vector<int> small_elements() const {
    std::vector<int> out;
    for (int x = 0; x <= frobenius() + 1; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  std::vector<int> gaps() const {
    std::vector<int> out;
    for (int x = 0; x <= frobenius(); ++x)
      if (!member_[x]) out.push_back(x);
    return out;
  }

  int genus() const { return static_cast<int>(gaps().size()); }

  std::vector<int> apery_set(int m) const {
    require(m > 0 && contains(m), ErrorKind::domain,
            std::to_string(m) + " is not a positive member of " + to_string());
    std::vector<int> out(m, -1);
    int found = 0;
    for (int x = 0; found < m; ++x) {
      if (!contains(x) || out[x % m] >= 0) continue;
      out[x % m] = x;
      ++found;
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? "," : "") + std::to_string(generators_[i]);
    return s + ">";
  }

  bool operator==(const NumericalSemigroup& o) const { return member_ == o.member_; }

 private:
  explicit NumericalSemigroup(std::vector<bool> member) : member_(std::move(member)) {
    const int f = frobenius();
    multiplicity_ = 1;
    while (!contains(multiplicity_)) ++multiplicity_;
    // Minimal generators: nonzero members up to F + e that are not sums of two nonzero members.
    for (int x = 1; x <= std::max(f, 0) + multiplicity_; ++x) {
      if (!contains(x)) continue;
      bool decomposable = false;
      for (int y = 1; y <= x / 2 && !decomposable; ++y) decomposable = contains(y) && contains(x - y);
      if (!decomposable) generators_.push_back(x);
    }
  }

  std::vector<bool> member_;
  int multiplicity_ = 1;
  std::vector<int> generators_;
};

// A triple x <= y <= z of members with y + z - x outside H, if one exists.
inline std::optional<std::array<int, 3>> arf_violation(const NumericalSemigroup& h) {
  const int bound = h.frobenius() + h.multiplicity();
  std::vector<int> m;
  for (int x = 0; x <= bound; ++x)
    if (h.contains(x)) m.push_back(x);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j)
      for (std::size_t l = j; l < m.size(); ++l)
        if (!h.contains(m[j] + m[l] - m[i])) return std::array<int, 3>{m[i], m[j], m[l]};
  return std::nullopt;
}

inline bool is_arf_semigroup(const NumericalSemigroup& h) { return !arf_violation(h).has_value(); }

inline NumericalSemigroup arf_closure_fixpoint(const NumericalSemigroup& h) {
  const int bound = h.frobenius() + h.multiplicity();
  std::vector<bool> window(bound + 1);
  for (int x = 0; x <= bound; ++x) window[x] = h.contains(x);
  auto in = [&](int x) { return x > bound || window[x]; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x <= bound; ++x) {
      if (!window[x]) continue;
      for (int y = x; y <= bound; ++y) {
        if (!window[y]) continue;
        for (int z = y; z <= bound; ++z) {
          if (!window[z]) continue;
          const int w = y + z - x;
          if (!in(w)) {
            window[w] = true;
            changed = true;
          }
        }
      }
    }
  }
  return NumericalSemigroup::from_membership(std::move(window));
}

inline NumericalSemigroup blowup_semigroup(const NumericalSemigroup& h) {
  if (h.is_naturals()) return h;
  const int e = h.multiplicity();
  std::vector<int> gens{e};
  for (int a : h.generators())
    if (a != e) gens.push_back(a - e);
  return NumericalSemigroup::from_generators(gens);
}

// Multiplicities e_0, e_1, ... of the successive blow-ups, stopping at the naturals.
inline std::vector<int> multiplicity_sequence(const NumericalSemigroup& h) {
  std::vector<int> seq;
  NumericalSemigroup cur = h;
  const int guard = h.frobenius() + h.multiplicity();
  while (!cur.is_naturals()) {
    require(static_cast<int>(seq.size()) <= guard, ErrorKind::internal,
            "blow-up sequence of " + h.to_string() + " did not reach the naturals");
    seq.push_back(cur.multiplicity());
    cur = blowup_semigroup(cur);
  }
  return seq;
}

inline NumericalSemigroup arf_closure_multiplicity_sequence(const NumericalSemigroup& h) {
  const std::vector<int> seq = multiplicity_sequence(h);
  int total = 0;
  std::vector<int> partial{0};
  for (int e : seq) partial.push_back(total += e);
  std::vector<bool> window(total + 1, false);
  for (int s : partial) window[s] = true;
  return NumericalSemigroup::from_membership(std::move(window));
}

// Every numerical semigroup with Frobenius number at most max_frobenius, by direct enumeration of
// addition-closed subsets of [1, max_frobenius].
inline std::vector<NumericalSemigroup> semigroups_with_frobenius_at_most(int max_frobenius) {
  require(max_frobenius >= -1 && max_frobenius <= 24, ErrorKind::configuration,
          "Frobenius bound out of range");
  std::vector<NumericalSemigroup> out;
  const int n = max_frobenius;
  if (n <= 0) {
    out.push_back(NumericalSemigroup::naturals());
    return out;
  }
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    // bit x-1 set means x is a member.
    auto in = [&](int x) { return x > n || (x == 0) || ((mask >> (x - 1)) & 1u); };
    bool closed = true;
    for (int x = 1; x <= n && closed; ++x) {
      if (!in(x)) continue;
      for (int y = x; x + y <= n; ++y)
        if (in(y) && !in(x + y)) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    std::vector<bool> window(n + 1);
    for (int x = 0; x <= n; ++x) window[x] = in(x);
    out.push_back(NumericalSemigroup::from_membership(std::move(window)));
  }
  return out;
}

}  // namespace arfkit
