#include "foldsieve/sieve_core.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace foldsieve;

namespace {

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t gcd_count(std::int64_t lo, std::int64_t hi, const std::vector<std::uint64_t>& J) {
  std::int64_t prod = 1;
  for (auto p : J) prod *= static_cast<std::int64_t>(p);
  std::int64_t c = 0;
  for (std::int64_t m = lo; m <= hi; ++m)
    if (std::gcd(m, prod) != 1) ++c;
  return c;
}

}  // namespace

TEST(SieveCore, SmallTables) {
  const auto t30 = build_prime_table(30);
  const std::vector<std::uint64_t> want = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  EXPECT_EQ(std::vector<std::uint64_t>(t30.primes().begin(), t30.primes().end()), want);
  const auto t2 = build_prime_table(2);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2.nth(1), 2u);
}

TEST(SieveCore, MatchesTrialDivision) {
  const auto t = build_prime_table(20000, {64, 1});
  for (std::uint64_t m = 0; m <= 20000; ++m) ASSERT_EQ(t.is_prime(m), naive_prime(m)) << m;
}

TEST(SieveCore, SegmentAndThreadIndependence) {
  const auto a = build_prime_table(500000);
  const auto b = build_prime_table(500000, {4096, 8});
  ASSERT_EQ(a.size(), b.size());
  EXPECT_TRUE(std::equal(a.primes().begin(), a.primes().end(), b.primes().begin()));
}

TEST(SieveCore, PublishedIndices) {
  const auto t = build_prime_table(356100);
  EXPECT_EQ(t.nth(30456), 355969u);
  EXPECT_EQ(t.nth(30457), 356023u);
  EXPECT_EQ(prime_count(355991, t), 30456u);
}

TEST(SieveCore, PrimeCount) {
  const auto t = build_prime_table(1000);
  EXPECT_EQ(prime_count(1, t), 0u);
  EXPECT_EQ(prime_count(-3.5, t), 0u);
  EXPECT_EQ(prime_count(100, t), 25u);
  EXPECT_EQ(prime_count(100.9, t), 25u);
  EXPECT_EQ(nth_prime(1, t), 2u);
  EXPECT_EQ(nth_prime(10, t), 29u);
  std::uint64_t prev = 0;
  for (double x = 0; x <= 1000; x += 0.5) {
    const auto c = prime_count(x, t);
    EXPECT_GE(c, prev);
    prev = c;
  }
  for (std::uint64_t n = 1; n <= t.size(); ++n) EXPECT_EQ(t.pi(t.nth(n)), n);
}

TEST(SieveCore, Errors) {
  const auto t = build_prime_table(100);
  EXPECT_THROW(t.nth(0), domain_error);
  EXPECT_THROW(t.nth(26), range_error);
  EXPECT_THROW(prime_count(101, t), range_error);
  EXPECT_THROW(build_prime_table(1), domain_error);
  EXPECT_THROW(IntervalSpec(5, 4, {2}), domain_error);
  EXPECT_THROW(IntervalSpec(1, 4, {2, 2}), domain_error);
  EXPECT_THROW(IntervalSpec(1, 4, {4}), domain_error);
}

TEST(SieveCore, SpfLookups) {
  const auto t = build_prime_table(10000);
  EXPECT_EQ(t.spf(91), 7u);
  EXPECT_EQ(t.spf(97), 97u);
  const auto seg = t.spf_segment(9000, 10000);
  for (std::uint64_t m = 9000; m <= 10000; ++m) EXPECT_EQ(seg[m - 9000], t.spf(m)) << m;
}

TEST(SieveCore, NoncoprimeExamples) {
  EXPECT_EQ(noncoprime_count(IntervalSpec(1, 10, {2, 3})), 7);
  EXPECT_EQ(noncoprime_count(IntervalSpec(1, 1, {2})), 0);
  EXPECT_EQ(noncoprime_count(IntervalSpec(1, 25, {2, 3, 5, 7})), 19);
  EXPECT_EQ(noncoprime_count(IntervalSpec(1, 25, {})), 0);
  EXPECT_EQ(noncoprime_count(IntervalSpec(0, 0, {3})), 1);
}

TEST(SieveCore, NoncoprimeMatchesGcdOracle) {
  const auto p10 = first_primes(10);
  seeded_rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> J;
    for (auto p : p10)
      if (rng.uniform_below(3) == 0) J.push_back(p);
    const std::int64_t lo = rng.uniform_in(0, 999000);
    const std::int64_t hi = lo + rng.uniform_in(0, 1000);
    const IntervalSpec spec(lo, hi, J);
    ASSERT_EQ(noncoprime_count(spec, 64), gcd_count(lo, hi, J)) << lo << " " << hi;
    EXPECT_EQ(noncoprime_count(spec) + coprime_count(spec), spec.size());
  }
}
