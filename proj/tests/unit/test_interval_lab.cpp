#include "foldsieve/interval_lab.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace foldsieve;

namespace {

std::int64_t count_by_gcd(std::int64_t lo, std::int64_t hi, const std::vector<std::uint64_t>& J) {
  std::int64_t c = 0;
  for (std::int64_t m = lo; m <= hi; ++m)
    for (auto p : J)
      if (m % static_cast<std::int64_t>(p) == 0) {
        ++c;
        break;
      }
  return c;
}

// Scan oracle: D from the prime table alone. With i = k = (p^2+1)/2 the
// shifted window is [i+1, 2i]; everything in [1, 2i] that is not a prime
// above p_n, and not 1, shares a factor with P(n).
std::int64_t discrepancy_via_pi(std::uint64_t n, const PrimeTable& t) {
  const auto p = static_cast<std::int64_t>(t.nth(n));
  const std::int64_t i = (p * p + 1) / 2;
  const auto pi_i = static_cast<std::int64_t>(t.pi(static_cast<std::uint64_t>(i)));
  const auto pi_2i = static_cast<std::int64_t>(t.pi(static_cast<std::uint64_t>(2 * i)));
  return 2 * pi_i - pi_2i + 1 - static_cast<std::int64_t>(n);
}

}  // namespace

TEST(IntervalLab, DiscrepancyExamples) {
  const std::vector<std::uint64_t> J = {2, 3, 5, 7};
  EXPECT_EQ(discrepancy(25, 25, J), 0);
  for (std::int64_t i : {1, 7, 30, 211}) EXPECT_EQ(discrepancy(i, 0, J), 0);
  EXPECT_THROW(discrepancy(0, 3, J), domain_error);
  EXPECT_THROW(discrepancy(5, -2, J), domain_error);
}

TEST(IntervalLab, DiscrepancyMatchesEnumeration) {
  const std::vector<std::uint64_t> J = {3, 5, 11};
  for (std::int64_t i = 1; i <= 60; i += 7)
    for (std::int64_t k = -1; k <= 80; k += 9) {
      const auto want = count_by_gcd(1 + k, i + k, J) - count_by_gcd(1, i, J);
      EXPECT_EQ(discrepancy(i, k, J), want);
      const auto want0 = count_by_gcd(1 + k, i + k, J) - count_by_gcd(0, i - 1, J);
      EXPECT_EQ(discrepancy(i, k, J, ReferenceWindow::base0), want0);
    }
}

TEST(IntervalLab, Bound) {
  EXPECT_EQ(theorem1_bound(std::size_t{4}), rational(10));
  EXPECT_EQ(theorem1_bound(std::size_t{8}), rational(40));
  EXPECT_EQ(theorem1_bound(std::size_t{100}), rational(6250));
  EXPECT_EQ(theorem1_bound(std::size_t{5}), rational(125, 8));
}

TEST(IntervalLab, HValue) {
  const std::vector<std::uint64_t> T23 = {2, 3};
  const std::vector<std::uint64_t> T235 = {2, 3, 5};
  const std::vector<std::int64_t> six = {6};
  const std::vector<std::int64_t> thirty = {30};
  const std::vector<std::int64_t> none;
  EXPECT_EQ(h_value(six, T23), 1);
  EXPECT_EQ(h_value(none, T235), 0);
  EXPECT_EQ(h_value(thirty, T235), 1);
}

TEST(IntervalLab, HValueEqualsNoncoprimeCount) {
  const std::vector<std::uint64_t> T = {2, 3, 5, 7, 11};
  seeded_rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> V;
    const auto size = rng.uniform_below(40);
    for (std::uint64_t k = 0; k < size; ++k) V.push_back(rng.uniform_in(-5000, 5000));
    std::int64_t want = 0;
    for (auto m : V)
      for (auto p : T)
        if (m % static_cast<std::int64_t>(p) == 0) {
          ++want;
          break;
        }
    EXPECT_EQ(h_value(V, T), want);
  }
}

TEST(IntervalLab, ScanRecords) {
  const auto t = build_prime_table(2000);
  const auto one = ratio_scan(4, 4, t);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].i, 25);
  EXPECT_EQ(one[0].k, 25);
  EXPECT_EQ(one[0].discrepancy, 0);
  EXPECT_EQ(one[0].bound, rational(10));
  EXPECT_EQ(one[0].ratio, 0.0);
  EXPECT_THROW(ratio_scan(3, 5, t), domain_error);
  EXPECT_THROW(ratio_scan(6, 5, t), domain_error);
  EXPECT_THROW(ratio_scan(4, 400, t), range_error);
}

TEST(IntervalLab, ScanAgreesWithPrimeCountOracle) {
  const auto t = build_prime_table(2000000);
  const auto recs = ratio_scan(4, 200, t, 4);
  ASSERT_EQ(recs.size(), 197u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.discrepancy, discrepancy_via_pi(r.n, t)) << r.n;
    EXPECT_TRUE(within_theorem1_bound(r)) << r.n;
    EXPECT_EQ(r.ratio_exact, rational(r.discrepancy, static_cast<long long>(r.n * r.n)));
  }
  EXPECT_EQ(recs.front().n, 4u);
  EXPECT_EQ(recs.back().n, 200u);
  EXPECT_EQ(recs.back().discrepancy, 6089);
}

TEST(IntervalLab, ScanIsThreadIndependent) {
  const auto t = build_prime_table(20000);
  const auto a = ratio_scan(4, 60, t, 1);
  const auto b = ratio_scan(4, 60, t, 7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].discrepancy, b[k].discrepancy);
    EXPECT_EQ(a[k].ratio, b[k].ratio);
  }
}

TEST(IntervalLab, Log2Study) {
  const auto t = build_prime_table(2000);
  const auto recs = ratio_scan(150, 200, t);
  const auto s = log2_study(recs);
  EXPECT_NEAR(s.mean_ratio, 0.152805, 5e-7);
  EXPECT_TRUE(s.reproduced);
  EXPECT_FALSE(log2_study(recs, 0.1733, 0.01).reproduced);
  EXPECT_THROW(log2_study({}), domain_error);
}

TEST(IntervalLab, RoundingToFifteenDigits) {
  EXPECT_EQ(round_15_significant(0.0), 0.0);
  EXPECT_EQ(round_15_significant(1.0 / 3.0), 0.333333333333333);
}
