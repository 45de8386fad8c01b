#include "foldsieve/totient_identities.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace foldsieve;

namespace {

std::int64_t prod(const std::vector<std::uint64_t>& xs) {
  std::int64_t out = 1;
  for (auto x : xs) out *= static_cast<std::int64_t>(x);
  return out;
}

// |{1 <= m <= prod J : gcd(m (m - s), prod J) = 1}| via gcd.
std::int64_t bn_oracle(const std::vector<std::uint64_t>& J, std::int64_t s) {
  const std::int64_t P = prod(J);
  std::int64_t c = 0;
  for (std::int64_t m = 1; m <= P; ++m)
    if (std::gcd(m, P) == 1 && std::gcd(m - s, P) == 1) ++c;
  return c;
}

std::int64_t cap_oracle(std::size_t n, const std::vector<std::uint64_t>& V, std::uint64_t b) {
  const auto ps = first_primes(n);
  std::int64_t vb = static_cast<std::int64_t>(b) * prod(V);
  std::vector<std::uint64_t> rest;
  for (auto p : ps)
    if (std::find(V.begin(), V.end(), p) == V.end()) rest.push_back(p);
  const std::int64_t R = prod(rest);
  const std::int64_t period = prod(ps) * static_cast<std::int64_t>(b);
  std::int64_t c = 0;
  for (std::int64_t m = 1; m <= period; ++m)
    if (std::gcd(m, vb) != 1 && std::gcd(m, R) != 1) ++c;
  return c;
}

}  // namespace

TEST(TotientIdentities, BnExamples) {
  const std::vector<std::uint64_t> J = {2, 3, 5, 7};
  auto r = bn_check(J, 2);
  EXPECT_EQ(r.brute_count, 15);
  EXPECT_EQ(r.formula_value, rational(15));
  EXPECT_TRUE(r.matches);
  r = bn_check(J, 0);
  EXPECT_EQ(r.brute_count, 48);
  EXPECT_TRUE(r.matches);
  const std::vector<std::uint64_t> J23 = {2, 3};
  r = bn_check(J23, 6);
  EXPECT_EQ(r.brute_count, 2);
  EXPECT_TRUE(r.matches);
  EXPECT_THROW(bn_check(J, 3), domain_error);
  const std::vector<std::uint64_t> bad = {2, 6};
  EXPECT_THROW(bn_check(bad, 2), domain_error);
  EXPECT_THROW(bn_check(J, 2, 100), capacity_error);
}

TEST(TotientIdentities, BnFailsForCompositeElements) {
  const std::vector<std::uint64_t> J = {4};
  const auto r = bn_check(J, 2);
  EXPECT_EQ(r.brute_count, bn_oracle(J, 2));
  EXPECT_FALSE(r.matches);
}

TEST(TotientIdentities, BnMatchesGcdOracle) {
  for (const auto& inst : draw_bn_instances(60, 11, 40000)) {
    const auto r = bn_check(inst.J, inst.s);
    EXPECT_EQ(r.brute_count, bn_oracle(inst.J, inst.s));
    EXPECT_TRUE(r.matches);
  }
}

TEST(TotientIdentities, BmChain) {
  const std::vector<std::uint64_t> J = {2, 3, 5, 7};
  const auto r = bm_check(J, 6, 2);
  ASSERT_EQ(r.checks.size(), 3u);
  EXPECT_EQ(r.checks[0].brute, 30);
  EXPECT_EQ(r.checks[0].formula, rational(24));
  EXPECT_FALSE(r.checks[0].holds);
  EXPECT_TRUE(r.checks[1].holds);
  EXPECT_EQ(r.checks[2].brute, 15);
  EXPECT_TRUE(r.checks[2].holds);
  EXPECT_FALSE(r.matches);

  const std::vector<std::uint64_t> J23 = {2, 3};
  const auto small = bm_check(J23, 6, 2);
  EXPECT_EQ(small.checks[0].brute, 2);
  EXPECT_EQ(small.checks[2].brute, 1);
  EXPECT_TRUE(small.checks[1].holds);

  EXPECT_THROW(bm_check(J, 2, 2), domain_error);
  EXPECT_THROW(bm_check(J, 6, 6), domain_error);
  const std::vector<std::uint64_t> no2 = {3, 5};
  EXPECT_THROW(bm_check(no2, 30, 2), domain_error);
}

TEST(TotientIdentities, CapExamples) {
  const std::vector<std::uint64_t> V2 = {2};
  const std::vector<std::uint64_t> V3 = {3};
  const std::vector<std::uint64_t> none;
  auto r = cap_check(2, V2, 5);
  EXPECT_EQ(r.brute_count, 6);
  EXPECT_TRUE(r.matches);
  r = cap_check(2, V3, 7);
  EXPECT_EQ(r.brute_count, 9);
  EXPECT_TRUE(r.matches);
  r = cap_check(2, none, 5);
  EXPECT_EQ(r.brute_count, 4);
  EXPECT_EQ(r.formula_value, rational(4));
  EXPECT_EQ(r.brute_count, cap_oracle(2, none, 5));
  EXPECT_THROW(cap_check(2, V2, 9), domain_error);
  const std::vector<std::uint64_t> outside = {5};
  EXPECT_THROW(cap_check(2, outside, 7), domain_error);
}

TEST(TotientIdentities, CapFailsForCompositeB) {
  const std::vector<std::uint64_t> V = {2};
  const auto r = cap_check(2, V, 25);
  EXPECT_EQ(r.brute_count, cap_oracle(2, V, 25));
  EXPECT_FALSE(r.matches);
}

TEST(TotientIdentities, CapMatchesGcdOracle) {
  for (const auto& inst : draw_cap_instances(40, 5, 30000)) {
    const auto r = cap_check(inst.n, inst.V, inst.b);
    EXPECT_EQ(r.brute_count, cap_oracle(inst.n, inst.V, inst.b));
    EXPECT_TRUE(r.matches);
  }
}

TEST(TotientIdentities, MabExamples) {
  const std::vector<std::uint64_t> V = {3};
  const std::vector<std::uint64_t> S1 = {1};
  const std::vector<std::uint64_t> S12 = {1, 2};
  auto r = mab_check(2, V, 5, S1);
  EXPECT_EQ(r.brute_count, 7);
  EXPECT_EQ(r.formula_value, rational(7));
  EXPECT_TRUE(r.matches);
  r = mab_check(2, V, 5, S12);
  EXPECT_EQ(r.brute_count, 7);
  EXPECT_EQ(r.formula_value, rational(9));
  EXPECT_FALSE(r.matches);
  const std::vector<std::uint64_t> none;
  r = mab_check(1, none, 3, S1);
  EXPECT_EQ(r.brute_count, 1);
  EXPECT_TRUE(r.matches);
  const std::vector<std::uint64_t> S6 = {6};
  EXPECT_THROW(mab_check(2, V, 5, S6), domain_error);
}

TEST(TotientIdentities, SweepsAreSeededAndThreadIndependent) {
  const auto a = bn_sweep(50, 0, 10000000, 1);
  const auto b = bn_sweep(50, 0, 10000000, 8);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].params, b[k].params);
    EXPECT_EQ(a[k].brute_count, b[k].brute_count);
  }
  const auto c = bn_sweep(50, 1, 10000000, 1);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) differs = differs || a[k].params != c[k].params;
  EXPECT_TRUE(differs);
  for (const auto& inst : draw_cap_instances(100, 0, 10000000)) {
    EXPECT_TRUE(is_prime_trial(inst.b));
    EXPECT_GT(inst.b, first_primes(inst.n).back());
  }
}
