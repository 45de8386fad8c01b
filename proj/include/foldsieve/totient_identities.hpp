#pragma once

// Full-period checks of the totient counting identities: a brute-force count
// over one period next to the closed form, as exact rationals.

#include "foldsieve/common.hpp"
#include "foldsieve/sieve_core.hpp"

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace foldsieve {

inline constexpr std::uint64_t identity_period_budget = 1'000'000'000;

enum class LemmaId { BN, BM, CAP, MAB };

inline const char* to_string(LemmaId id) {
  switch (id) {
    case LemmaId::BN: return "BN";
    case LemmaId::BM: return "BM";
    case LemmaId::CAP: return "CAP";
    case LemmaId::MAB: return "MAB";
  }
  return "?";
}

/// One claimed relation inside a report (BM carries three).
struct IdentityCheck {
  std::string label;
  std::int64_t brute = 0;
  rational formula;
  bool holds = false;
};

struct IdentityReport {
  LemmaId lemma = LemmaId::BN;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> params;
  std::int64_t brute_count = 0;
  rational formula_value;
  bool matches = false;
  std::vector<IdentityCheck> checks;
};

namespace detail {

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

inline std::uint64_t checked_product(std::span<const std::uint64_t> xs, std::uint64_t budget, const char* who) {
  std::uint64_t prod = 1;
  for (std::uint64_t x : xs) {
    if (x == 0) throw domain_error(std::string(who) + ": zero element");
    if (prod > budget / x) throw capacity_error(std::string(who) + ": period exceeds enumeration budget");
    prod *= x;
  }
  return prod;
}

/// Marks m in [1, period] (index m - 1) that lie in residue class `residue` mod q.
inline void mark_class(std::vector<char>& mark, std::uint64_t q, std::int64_t residue) {
  const auto period = static_cast<std::int64_t>(mark.size());
  const auto qi = static_cast<std::int64_t>(q);
  std::int64_t first = floor_mod(residue, qi);
  if (first == 0) first = qi;
  for (std::int64_t m = first; m <= period; m += qi) mark[static_cast<std::size_t>(m - 1)] = 1;
}

/// |{1 <= m <= period : gcd(m (m - s), modulus) = 1}|, by marking the classes
/// 0 and s for every prime factor of the modulus.
inline std::int64_t folded_coprime_over_period(std::uint64_t period, std::uint64_t modulus, std::int64_t s) {
  std::vector<char> mark(period, 0);
  for (std::uint64_t q : distinct_prime_factors(modulus)) {
    mark_class(mark, q, 0);
    mark_class(mark, q, s);
  }
  return static_cast<std::int64_t>(period) - std::count(mark.begin(), mark.end(), char{1});
}

inline rational euler_phi_exact(std::uint64_t m) {
  rational phi = static_cast<long long>(m);
  for (std::uint64_t q : distinct_prime_factors(m)) phi *= rational(static_cast<long long>(q - 1), static_cast<long long>(q));
  return phi;
}

inline bool divides(std::uint64_t d, std::int64_t s) { return floor_mod(s, static_cast<std::int64_t>(d)) == 0; }

inline void require_pairwise_coprime(std::span<const std::uint64_t> J, const char* who) {
  for (std::size_t a = 0; a < J.size(); ++a)
    for (std::size_t b = a + 1; b < J.size(); ++b)
      if (std::gcd(J[a], J[b]) != 1) throw domain_error(std::string(who) + ": elements are not pairwise coprime");
}

inline std::vector<std::int64_t> as_params(std::span<const std::uint64_t> xs) {
  return std::vector<std::int64_t>(xs.begin(), xs.end());
}

inline bool equal_exactly(std::int64_t brute, const rational& formula) {
  return is_integral(formula) && formula == rational(brute);
}

}  // namespace detail

/// |{1 <= m <= prod J : gcd(m(m - s), prod J) = 1}| against
/// phi(prod J) * prod_{d in J, d does not divide s} (1 - 1/(d - 1)).
inline IdentityReport bn_check(std::span<const std::uint64_t> J, std::int64_t s,
                               std::uint64_t budget = identity_period_budget) {
  if (s % 2 != 0) throw domain_error("bn_check: s must be even");
  detail::require_pairwise_coprime(J, "bn_check");
  const std::uint64_t period = detail::checked_product(J, budget, "bn_check");

  IdentityReport rep;
  rep.lemma = LemmaId::BN;
  rep.params = {{"J", detail::as_params(J)}, {"s", {s}}};
  rep.brute_count = detail::folded_coprime_over_period(period, period, s);
  rational formula = detail::euler_phi_exact(period);
  for (std::uint64_t d : J)
    if (!detail::divides(d, s)) formula *= rational(static_cast<long long>(d - 2), static_cast<long long>(d - 1));
  rep.formula_value = formula;
  rep.matches = detail::equal_exactly(rep.brute_count, formula);
  return rep;
}

/// The chain count(s) = form_s > count(t) = form_t, each link checked
/// separately. form_s keeps the (1 - 1/(d-1)) factors for odd d dividing s,
/// exactly as the closed form is written.
inline IdentityReport bm_check(std::span<const std::uint64_t> J, std::int64_t s, std::int64_t t,
                               std::uint64_t budget = identity_period_budget) {
  if (s % 2 != 0) throw domain_error("bm_check: s must be even");
  if (std::find(J.begin(), J.end(), std::uint64_t{2}) == J.end()) throw domain_error("bm_check: 2 must be in J");
  detail::require_pairwise_coprime(J, "bm_check");
  std::size_t divisors_of_s = 0;
  for (std::uint64_t d : J) {
    if (detail::divides(d, s)) ++divisors_of_s;
    if (detail::divides(d, t) != (d == 2)) throw domain_error("bm_check: 2 must be the only element of J dividing t");
  }
  if (divisors_of_s < 2) throw domain_error("bm_check: at least two elements of J must divide s");
  const std::uint64_t period = detail::checked_product(J, budget, "bm_check");

  rational base = static_cast<long long>(period);
  for (std::uint64_t d : J) base *= rational(static_cast<long long>(d - 1), static_cast<long long>(d));
  rational form_s = base;
  rational form_t = base;
  for (std::uint64_t d : J) {
    if (d == 2) continue;
    const rational factor(static_cast<long long>(d - 2), static_cast<long long>(d - 1));
    form_t *= factor;
    if (detail::divides(d, s)) form_s *= factor;
  }

  const std::int64_t count_s = detail::folded_coprime_over_period(period, period, s);
  const std::int64_t count_t = detail::folded_coprime_over_period(period, period, t);

  IdentityReport rep;
  rep.lemma = LemmaId::BM;
  rep.params = {{"J", detail::as_params(J)}, {"s", {s}}, {"t", {t}}};
  rep.brute_count = count_s;
  rep.formula_value = form_s;
  rep.checks = {
      {"count(s) = closed form for s", count_s, form_s, detail::equal_exactly(count_s, form_s)},
      {"count(s) > count(t)", count_s, rational(count_t), count_s > count_t},
      {"count(t) = closed form for t", count_t, form_t, detail::equal_exactly(count_t, form_t)},
  };
  rep.matches = true;
  for (const auto& c : rep.checks) rep.matches = rep.matches && c.holds;
  return rep;
}

namespace detail {

struct CapSetup {
  std::vector<std::uint64_t> primes;      // P(n)
  std::vector<std::uint64_t> rest;        // P(n) \ V
  std::vector<std::uint64_t> v_and_b;     // prime factors of prod V * b
  std::uint64_t period = 0;               // prod P(n) * b
};

inline CapSetup cap_setup(std::size_t n, std::span<const std::uint64_t> V, std::uint64_t b, std::uint64_t budget,
                          const char* who) {
  CapSetup st;
  st.primes = first_primes(n);
  if (b == 0) throw domain_error(std::string(who) + ": b must be positive");
  for (std::uint64_t q : st.primes)
    if (b % q == 0) throw domain_error(std::string(who) + ": b shares a factor with P(n)");
  for (std::uint64_t v : V)
    if (std::find(st.primes.begin(), st.primes.end(), v) == st.primes.end())
      throw domain_error(std::string(who) + ": V must be a subset of P(n)");
  std::vector<std::uint64_t> sorted(V.begin(), V.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw domain_error(std::string(who) + ": V has repeated elements");
  for (std::uint64_t q : st.primes)
    if (!std::binary_search(sorted.begin(), sorted.end(), q)) st.rest.push_back(q);
  st.v_and_b = sorted;
  for (std::uint64_t q : distinct_prime_factors(b)) st.v_and_b.push_back(q);
  std::vector<std::uint64_t> factors = st.primes;
  factors.push_back(b);
  st.period = checked_product(factors, budget, who);
  return st;
}

/// prod_{q in V} (1 - 1/q), times (1 - 1/b) when include_b.
inline rational survival(std::span<const std::uint64_t> V, std::uint64_t b, bool include_b) {
  rational out = 1;
  for (std::uint64_t q : V) out *= rational(static_cast<long long>(q - 1), static_cast<long long>(q));
  if (include_b) out *= rational(static_cast<long long>(b - 1), static_cast<long long>(b));
  return out;
}

}  // namespace detail

/// Over [1, prod P(n) * b]: |{gcd(m, prod V * b) != 1} and {gcd(m, prod P(n)\V) != 1}|
/// against (1 - prod_{q in V u {b}} (1 - 1/q)) * |{gcd(m, prod P(n)\V) != 1}|.
inline IdentityReport cap_check(std::size_t n, std::span<const std::uint64_t> V, std::uint64_t b,
                                std::uint64_t budget = identity_period_budget) {
  const auto st = detail::cap_setup(n, V, b, budget, "cap_check");
  std::vector<char> hit_vb(st.period, 0);
  std::vector<char> hit_rest(st.period, 0);
  for (std::uint64_t q : st.v_and_b) detail::mark_class(hit_vb, q, 0);
  for (std::uint64_t q : st.rest) detail::mark_class(hit_rest, q, 0);
  std::int64_t both = 0;
  std::int64_t rest_count = 0;
  for (std::size_t k = 0; k < st.period; ++k) {
    rest_count += hit_rest[k];
    both += hit_rest[k] & hit_vb[k];
  }
  IdentityReport rep;
  rep.lemma = LemmaId::CAP;
  rep.params = {{"n", {static_cast<std::int64_t>(n)}}, {"V", detail::as_params(V)}, {"b", {static_cast<std::int64_t>(b)}}};
  rep.brute_count = both;
  rep.formula_value = (1 - detail::survival(V, b, true)) * rational(rest_count);
  rep.matches = detail::equal_exactly(both, rep.formula_value);
  return rep;
}

/// Over [1, prod P(n) * b]: |({gcd(m, prod V * b) != 1} u {k w b : w in S}) and
/// {gcd(m, prod P(n)\V) = 1}| against (1 - (1 - a/b) prod_{q in V}(1 - 1/q)) * |{gcd(m, prod P(n)\V) = 1}|.
inline IdentityReport mab_check(std::size_t n, std::span<const std::uint64_t> V, std::uint64_t b,
                                std::span<const std::uint64_t> S, std::uint64_t budget = identity_period_budget) {
  const auto st = detail::cap_setup(n, V, b, budget, "mab_check");
  if (S.empty() || S.size() >= b) throw domain_error("mab_check: need 1 <= |S| < b");
  std::vector<std::uint64_t> sorted(S.begin(), S.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw domain_error("mab_check: S has repeated elements");
  if (sorted.front() < 1 || sorted.back() > b) throw domain_error("mab_check: S must lie in [1, b]");

  std::vector<char> covered(st.period, 0);
  std::vector<char> hit_rest(st.period, 0);
  for (std::uint64_t q : st.v_and_b) detail::mark_class(covered, q, 0);
  for (std::uint64_t w : sorted)
    if (w * b <= st.period) detail::mark_class(covered, w * b, 0);
  for (std::uint64_t q : st.rest) detail::mark_class(hit_rest, q, 0);
  std::int64_t lhs = 0;
  std::int64_t coprime_rest = 0;
  for (std::size_t k = 0; k < st.period; ++k) {
    if (hit_rest[k]) continue;
    ++coprime_rest;
    lhs += covered[k];
  }
  const auto a = static_cast<long long>(sorted.size());
  IdentityReport rep;
  rep.lemma = LemmaId::MAB;
  rep.params = {{"n", {static_cast<std::int64_t>(n)}},
                {"V", detail::as_params(V)},
                {"b", {static_cast<std::int64_t>(b)}},
                {"S", detail::as_params(sorted)}};
  rep.brute_count = lhs;
  rep.formula_value =
      (1 - (1 - rational(a, static_cast<long long>(b))) * detail::survival(V, b, false)) * rational(coprime_rest);
  rep.matches = detail::equal_exactly(lhs, rep.formula_value);
  return rep;
}

// Randomized sweeps. Instances are drawn sequentially from one generator and
// evaluated in parallel, so a seed fixes the output regardless of threads.

struct BnInstance {
  std::vector<std::uint64_t> J;
  std::int64_t s = 0;
};

struct CapInstance {
  std::size_t n = 0;
  std::vector<std::uint64_t> V;
  std::uint64_t b = 0;
};

inline std::vector<BnInstance> draw_bn_instances(std::size_t count, std::uint64_t seed, std::uint64_t max_period) {
  static constexpr std::uint64_t pool[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  seeded_rng rng(seed);
  std::vector<BnInstance> out;
  while (out.size() < count) {
    const std::size_t size = 1 + rng.uniform_below(6);
    std::vector<std::uint64_t> J;
    std::uint64_t period = 1;
    while (J.size() < size) {
      const std::uint64_t q = pool[rng.uniform_below(std::size(pool))];
      if (std::find(J.begin(), J.end(), q) != J.end()) continue;
      J.push_back(q);
      period *= q;
    }
    if (period > max_period) continue;
    // s = 2 * (product of a random subset of J) * small cofactor, signed.
    std::int64_t s = 2;
    for (std::uint64_t q : J)
      if (rng.uniform_below(2) == 1 && q != 2) s *= static_cast<std::int64_t>(q);
    s *= rng.uniform_in(0, 6);
    if (rng.uniform_below(2) == 1) s = -s;
    out.push_back({std::move(J), s});
  }
  return out;
}

inline std::vector<CapInstance> draw_cap_instances(std::size_t count, std::uint64_t seed, std::uint64_t max_period) {
  seeded_rng rng(seed);
  std::vector<CapInstance> out;
  while (out.size() < count) {
    const std::size_t n = 1 + rng.uniform_below(5);
    const auto primes = first_primes(n);
    const std::uint64_t primorial = detail::checked_product(primes, max_period, "draw_cap_instances");
    const std::uint64_t b_cap = max_period / primorial;
    if (b_cap <= primes.back()) continue;
    // Log-uniform upper bound keeps the average period moderate.
    const int digits = static_cast<int>(rng.uniform_in(1, 7));
    std::uint64_t upper = 1;
    for (int d = 0; d < digits; ++d) upper *= 10;
    upper = std::min(upper, b_cap);
    if (upper <= primes.back() + 1) continue;
    const std::uint64_t b = primes.back() + 1 + rng.uniform_below(upper - primes.back());
    if (!is_prime_trial(b)) continue;
    std::vector<std::uint64_t> V;
    for (std::uint64_t q : primes)
      if (rng.uniform_below(2) == 1) V.push_back(q);
    out.push_back({n, std::move(V), b});
  }
  return out;
}

inline std::vector<IdentityReport> bn_sweep(std::size_t count, std::uint64_t seed, std::uint64_t max_period,
                                            unsigned threads = 1) {
  const auto instances = draw_bn_instances(count, seed, max_period);
  return parallel_map<IdentityReport>(instances.size(), threads,
                                      [&](std::size_t k) { return bn_check(instances[k].J, instances[k].s); });
}

inline std::vector<IdentityReport> cap_sweep(std::size_t count, std::uint64_t seed, std::uint64_t max_period,
                                             unsigned threads = 1) {
  const auto instances = draw_cap_instances(count, seed, max_period);
  return parallel_map<IdentityReport>(instances.size(), threads, [&](std::size_t k) {
    return cap_check(instances[k].n, instances[k].V, instances[k].b);
  });
}

}  // namespace foldsieve
