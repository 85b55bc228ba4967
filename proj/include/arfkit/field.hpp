#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "arfkit/error.hpp"

namespace arfkit {

// Field policy objects. Values are plain data; all arithmetic goes through the policy.
template <class K>
concept ExactField = requires(const K& k, const typename K::value_type& a,
                              const typename K::value_type& b, long long n) {
  { k.zero() } -> std::convertible_to<typename K::value_type>;
  { k.one() } -> std::convertible_to<typename K::value_type>;
  { k.from_int(n) } -> std::convertible_to<typename K::value_type>;
  { k.add(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.sub(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.mul(a, b) } -> std::convertible_to<typename K::value_type>;
  { k.neg(a) } -> std::convertible_to<typename K::value_type>;
  { k.inv(a) } -> std::convertible_to<typename K::value_type>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.order() } -> std::convertible_to<std::optional<std::uint64_t>>;
  { k.name() } -> std::convertible_to<std::string>;
  { k.format(a) } -> std::convertible_to<std::string>;
};

class PrimeField {
 public:
  using value_type = std::uint32_t;
  static constexpr std::uint32_t max_prime = 97;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    require(p >= 2 && p <= max_prime, ErrorKind::configuration,
            "prime field characteristic must lie in [2, 97], got " + std::to_string(p));
    for (std::uint32_t d = 2; d * d <= p; ++d)
      require(p % d != 0, ErrorKind::configuration, std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const { return p_; }
  std::optional<std::uint64_t> order() const { return p_; }
  std::string name() const { return "F_" + std::to_string(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  // i-th element in the canonical enumeration 0, 1, ..., p-1.
  value_type element(std::uint64_t i) const { return static_cast<value_type>(i % p_); }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  value_type inv(value_type a) const {
    require(a != 0, ErrorKind::not_a_unit, "zero has no inverse in " + name());
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  std::string format(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  std::optional<std::uint64_t> order() const { return std::nullopt; }
  std::string name() const { return "Q"; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const { return value_type(n); }
  value_type element(std::uint64_t i) const { return value_type(static_cast<long long>(i)); }
  value_type from_fraction(long long num, long long den) const {
    require(den != 0, ErrorKind::configuration, "zero denominator");
    return value_type(num) / value_type(den);
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    require(a != 0, ErrorKind::not_a_unit, "zero has no inverse in Q");
    return value_type(1) / a;
  }
  bool is_zero(const value_type& a) const { return a == 0; }
  std::string format(const value_type& a) const { return a.str(); }

  bool operator==(const RationalField&) const = default;
};

}  // namespace arfkit
