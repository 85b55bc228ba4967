#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arfkit/error.hpp"
#include "arfkit/field.hpp"

namespace arfkit {

namespace detail {

// out[0..n) = a[0..na) * b[0..nb) mod t^n, accumulated into out.
template <ExactField K, class V>
void mul_accumulate(const K& k, const V* a, std::size_t na, const V* b, std::size_t nb, V* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < na && i < n; ++i) {
    if (k.is_zero(a[i])) continue;
    const std::size_t lim = std::min(nb, n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (k.is_zero(b[j])) continue;
      out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
  }
}

// Inverse of a unit a[0..n) modulo t^n.
template <ExactField K, class V>
std::vector<V> invert_unit(const K& k, const V* a, std::size_t n) {
  std::vector<V> b(n, k.zero());
  if (n == 0) return b;
  require(!k.is_zero(a[0]), ErrorKind::not_a_unit, "series has positive valuation");
  const V a0inv = k.inv(a[0]);
  b[0] = a0inv;
  for (std::size_t m = 1; m < n; ++m) {
    V s = k.zero();
    for (std::size_t j = 1; j <= m; ++j)
      if (!k.is_zero(a[j])) s = k.add(s, k.mul(a[j], b[m - j]));
    b[m] = k.neg(k.mul(s, a0inv));
  }
  return b;
}

}  // namespace detail

template <ExactField K>
class TruncSeries {
 public:
  using value_type = typename K::value_type;

  TruncSeries(K field, std::size_t truncation)
      : field_(std::move(field)), coeffs_(truncation, field_.zero()) {
    require(truncation > 0, ErrorKind::configuration, "truncation must be positive");
  }

  TruncSeries(K field, std::vector<value_type> coeffs, std::size_t truncation)
      : TruncSeries(std::move(field), truncation) {
    for (std::size_t i = 0; i < coeffs.size() && i < truncation; ++i) coeffs_[i] = coeffs[i];
  }

  static TruncSeries monomial(K field, std::size_t degree, std::size_t truncation,
                              std::optional<value_type> coeff = std::nullopt) {
    TruncSeries s(field, truncation);
    if (degree < truncation) s.coeffs_[degree] = coeff ? *coeff : field.one();
    return s;
  }

  const K& field() const { return field_; }
  std::size_t truncation() const { return coeffs_.size(); }
  const std::vector<value_type>& coeffs() const { return coeffs_; }
  const value_type& coeff(std::size_t i) const { return coeffs_.at(i); }

  // nullopt encodes the sentinel "valuation >= T".
  std::optional<std::size_t> valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!field_.is_zero(coeffs_[i])) return i;
    return std::nullopt;
  }

  bool is_zero() const { return !valuation().has_value(); }

  TruncSeries operator+(const TruncSeries& o) const {
    check_compatible(o);
    TruncSeries r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.add(r.coeffs_[i], o.coeffs_[i]);
    return r;
  }

  TruncSeries operator-(const TruncSeries& o) const {
    check_compatible(o);
    TruncSeries r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.sub(r.coeffs_[i], o.coeffs_[i]);
    return r;
  }

  TruncSeries scaled(const value_type& c) const {
    TruncSeries r = *this;
    for (auto& x : r.coeffs_) x = field_.mul(x, c);
    return r;
  }

  bool operator==(const TruncSeries& o) const {
    if (!(field_ == o.field_) || coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!field_.is_zero(field_.sub(coeffs_[i], o.coeffs_[i]))) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (field_.is_zero(coeffs_[i])) continue;
      if (!out.empty()) out += " + ";
      const std::string c = field_.format(coeffs_[i]);
      if (i == 0) {
        out += c;
      } else {
        if (c != "1") out += c + "*";
        out += i == 1 ? "t" : "t^" + std::to_string(i);
      }
    }
    if (out.empty()) out = "0";
    return out + " + O(t^" + std::to_string(coeffs_.size()) + ")";
  }

  void check_compatible(const TruncSeries& o) const {
    require(field_ == o.field_, ErrorKind::configuration, "series over different fields");
    require(coeffs_.size() == o.coeffs_.size(), ErrorKind::configuration,
            "series truncations differ: " + std::to_string(coeffs_.size()) + " vs " +
                std::to_string(o.coeffs_.size()));
  }

 private:
  K field_;
  std::vector<value_type> coeffs_;
};

template <ExactField K>
TruncSeries<K> series_mul(const TruncSeries<K>& a, const TruncSeries<K>& b) {
  a.check_compatible(b);
  const std::size_t n = a.truncation();
  std::vector<typename K::value_type> out(n, a.field().zero());
  detail::mul_accumulate(a.field(), a.coeffs().data(), n, b.coeffs().data(), n, out.data(), n);
  return TruncSeries<K>(a.field(), std::move(out), n);
}

template <ExactField K>
TruncSeries<K> series_invert_unit(const TruncSeries<K>& a) {
  const std::size_t n = a.truncation();
  return TruncSeries<K>(a.field(), detail::invert_unit(a.field(), a.coeffs().data(), n), n);
}

}  // namespace arfkit
