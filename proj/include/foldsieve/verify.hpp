#pragma once

// Range verification of the binary Goldbach property against a prime table.

#include "foldsieve/common.hpp"
#include "foldsieve/sieve_core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace foldsieve {

struct GoldbachRangeResult {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t checked = 0;
  std::optional<std::uint64_t> first_failure;
  std::uint64_t max_least_prime = 0;     // largest "least p" over the range
  std::uint64_t max_least_prime_at = 0;  // first t attaining it
  bool passed() const { return !first_failure.has_value(); }
};

/// Least prime p <= t/2 with t - p prime, or 0.
inline std::uint64_t least_goldbach_prime(std::uint64_t t, const PrimeTable& table) {
  for (std::uint64_t p : table.primes()) {
    if (2 * p > t) break;
    if (table.is_prime(t - p)) return p;
  }
  return 0;
}

/// Checks every even t in [lo, hi]. The range is cut into contiguous blocks
/// and merged in order, so the result is the same for any thread count.
inline GoldbachRangeResult goldbach_verify_range(std::uint64_t lo, std::uint64_t hi, const PrimeTable& table,
                                                 unsigned threads = 1) {
  if (lo < 4 || lo > hi) throw domain_error("goldbach_verify_range: need 4 <= lo <= hi");
  if (lo % 2 != 0 || hi % 2 != 0) throw domain_error("goldbach_verify_range: endpoints must be even");
  if (hi > table.limit()) throw range_error("goldbach_verify_range: hi beyond table limit");

  const std::uint64_t evens = (hi - lo) / 2 + 1;
  constexpr std::uint64_t block = std::uint64_t{1} << 18;
  const std::uint64_t blocks = (evens + block - 1) / block;
  auto parts = parallel_map<GoldbachRangeResult>(blocks, threads, [&](std::size_t b) {
    GoldbachRangeResult part;
    const std::uint64_t first = lo + 2 * b * block;
    const std::uint64_t last = std::min(hi, first + 2 * (block - 1));
    part.lo = first;
    part.hi = last;
    for (std::uint64_t t = first; t <= last; t += 2) {
      ++part.checked;
      const std::uint64_t p = least_goldbach_prime(t, table);
      if (p == 0) {
        if (!part.first_failure) part.first_failure = t;
        continue;
      }
      if (p > part.max_least_prime) {
        part.max_least_prime = p;
        part.max_least_prime_at = t;
      }
    }
    return part;
  });

  GoldbachRangeResult out;
  out.lo = lo;
  out.hi = hi;
  for (const auto& part : parts) {
    out.checked += part.checked;
    if (!out.first_failure && part.first_failure) out.first_failure = part.first_failure;
    if (part.max_least_prime > out.max_least_prime) {
      out.max_least_prime = part.max_least_prime;
      out.max_least_prime_at = part.max_least_prime_at;
    }
  }
  return out;
}

}  // namespace foldsieve
