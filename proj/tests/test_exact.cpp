#include <gtest/gtest.h>

#include <random>

#include "arfkit/subspace.hpp"
#include "arfkit/series.hpp"
#include "oracle.hpp"

using namespace arfkit;

namespace {

template <class K>
TruncSeries<K> series_of(const K& k, std::initializer_list<long long> c, std::size_t t) {
  std::vector<typename K::value_type> v;
  for (long long x : c) v.push_back(k.from_int(x));
  return TruncSeries<K>(k, v, t);
}

// Schoolbook convolution on plain integers modulo p.
std::vector<int> schoolbook(const std::vector<int>& a, const std::vector<int>& b, int p) {
  std::vector<int> r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

}  // namespace

TEST(PrimeField, InverseMatchesExhaustiveSearch) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 97u}) {
    const PrimeField k(p);
    for (std::uint32_t a = 1; a < p; ++a) {
      std::uint32_t b = 1;
      while (a * b % p != 1) ++b;
      EXPECT_EQ(k.inv(a), b) << "p=" << p << " a=" << a;
    }
  }
}

TEST(PrimeField, RejectsBadCharacteristic) {
  EXPECT_THROW(PrimeField(4), Error);
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField(101), Error);
  EXPECT_THROW(PrimeField(2).inv(0), Error);
}

TEST(RationalField, Arithmetic) {
  const RationalField q;
  const auto h = q.from_fraction(1, 2), t = q.from_fraction(1, 3);
  EXPECT_EQ(q.add(h, t), q.from_fraction(5, 6));
  EXPECT_EQ(q.mul(q.inv(h), t), q.from_fraction(2, 3));
  EXPECT_EQ(q.format(q.from_fraction(-4, 6)), "-2/3");
  EXPECT_THROW(q.from_fraction(1, 0), Error);
}

TEST(Series, HandComputedProductOverF2) {
  const PrimeField k(2);
  const auto p = series_mul(series_of(k, {1, 1}, 4), series_of(k, {1, 1, 1, 1}, 4));
  EXPECT_EQ(p, TruncSeries<PrimeField>::monomial(k, 0, 4));
}

TEST(Series, InverseOfOnePlusT) {
  const PrimeField k(2);
  EXPECT_EQ(series_invert_unit(series_of(k, {1, 1}, 4)), series_of(k, {1, 1, 1, 1}, 4));
  const RationalField q;
  // 1/(1+t)^2 = sum (-1)^j (j+1) t^j
  const auto inv = series_invert_unit(series_of(q, {1, 2, 1}, 6));
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(inv.coeff(j), q.from_int((j % 2 ? -1 : 1) * static_cast<long long>(j + 1)));
}

TEST(Series, NonUnitInverseFails) {
  const PrimeField k(3);
  EXPECT_THROW(series_invert_unit(series_of(k, {0, 1}, 3)), Error);
}

TEST(Series, ProductMatchesSchoolbookOnRandomInputs) {
  std::mt19937 rng(7);
  for (int p : {2, 3, 7}) {
    const PrimeField k(static_cast<std::uint32_t>(p));
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t t = 1 + rng() % 9;
      std::vector<int> a(t), b(t);
      std::vector<std::uint32_t> ka(t), kb(t);
      for (std::size_t i = 0; i < t; ++i) {
        a[i] = static_cast<int>(rng() % p);
        b[i] = static_cast<int>(rng() % p);
        ka[i] = static_cast<std::uint32_t>(a[i]);
        kb[i] = static_cast<std::uint32_t>(b[i]);
      }
      const auto got = series_mul(TruncSeries<PrimeField>(k, ka, t), TruncSeries<PrimeField>(k, kb, t));
      const auto want = schoolbook(a, b, p);
      for (std::size_t i = 0; i < t; ++i) EXPECT_EQ(static_cast<int>(got.coeff(i)), want[i]);
      if (a[0]) {
        const auto inv = series_invert_unit(TruncSeries<PrimeField>(k, ka, t));
        std::vector<int> ia(inv.coeffs().begin(), inv.coeffs().end());
        const auto one = schoolbook(a, ia, p);
        for (std::size_t i = 0; i < t; ++i) EXPECT_EQ(one[i], i == 0 ? 1 : 0);
      }
    }
  }
}

TEST(Subspace, HandElimination) {
  const PrimeField k(2);
  const auto s = rref(k, 3, {{1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.pivots(), (std::vector<std::size_t>{0, 1}));
}

TEST(Subspace, DimensionsMatchEnumeratedSpans) {
  std::mt19937 rng(11);
  const PrimeField k(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    auto random_rows = [&](std::size_t count) {
      std::vector<Vec<PrimeField>> rows(count, Vec<PrimeField>(n));
      for (auto& r : rows)
        for (auto& x : r) x = rng() % 2;
      return rows;
    };
    const auto ru = random_rows(rng() % 4), rv = random_rows(rng() % 4);
    // enumerate spans as bitmasks
    auto span = [&](const std::vector<Vec<PrimeField>>& rows) {
      std::set<unsigned> s{0};
      for (const auto& r : rows) {
        unsigned m = 0;
        for (std::size_t i = 0; i < n; ++i) m |= r[i] << i;
        std::set<unsigned> next = s;
        for (unsigned x : s) next.insert(x ^ m);
        s = next;
      }
      return s;
    };
    const auto su = span(ru), sv = span(rv);
    std::set<unsigned> both;
    for (unsigned x : su)
      if (sv.count(x)) both.insert(x);
    std::vector<Vec<PrimeField>> all = ru;
    all.insert(all.end(), rv.begin(), rv.end());
    const auto u = rref(k, n, ru), v = rref(k, n, rv);
    EXPECT_EQ(1u << u.dim(), su.size());
    EXPECT_EQ(1u << sum(u, v).dim(), span(all).size());
    EXPECT_EQ(1u << intersect(u, v).dim(), both.size());
  }
}

TEST(Subspace, KernelOfDependentImages) {
  const PrimeField k(3);
  // images e0+e1, e1, e0 satisfy one relation
  const auto ker = kernel(k, 2, std::vector<Vec<PrimeField>>{{1, 1}, {0, 1}, {1, 0}});
  ASSERT_EQ(ker.dim(), 1u);
  const auto& r = ker.basis()[0];
  EXPECT_EQ(k.add(r[0], r[2]), 0u);
  EXPECT_EQ(k.add(r[0], r[1]), 0u);
}
