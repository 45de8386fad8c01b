#pragma once

// Segmented sieve of Eratosthenes, prime-count lookups and interval
// non-coprimality counting. Every other module uses these as its substrate.

#include "foldsieve/common.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace foldsieve {

inline constexpr std::uint64_t default_segment_size = std::uint64_t{1} << 20;

struct SieveOptions {
  std::uint64_t segment_size = default_segment_size;
  unsigned threads = 1;
};

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Deterministic trial-division primality; used to re-check table output and
/// to validate user-supplied prime sets.
inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

/// Plain sieve for small bounds (base primes, P(n) for tiny n).
inline std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

/// The first n primes, P(n), without needing a table.
inline std::vector<std::uint64_t> first_primes(std::size_t n) {
  std::uint64_t bound = 16;
  for (;;) {
    auto ps = simple_sieve(bound);
    if (ps.size() >= n) {
      ps.resize(n);
      return ps;
    }
    bound *= 2;
  }
}

class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  bool is_prime(std::uint64_t m) const {
    require_in_range(m);
    if (m < 2) return false;
    if (m == 2) return true;
    if (m % 2 == 0) return false;
    const std::uint64_t idx = m / 2;
    return (odd_bits_[idx >> 6] >> (idx & 63)) & 1u;
  }

  /// pi(x) for integer x <= limit.
  std::uint64_t pi(std::uint64_t x) const {
    require_in_range(x);
    return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  /// p_n, 1-based.
  std::uint64_t nth(std::uint64_t n) const {
    if (n == 0) throw domain_error("nth_prime: n must be positive");
    if (n > primes_.size())
      throw range_error("nth_prime: table holds only " + std::to_string(primes_.size()) + " primes");
    return primes_[n - 1];
  }

  /// Least prime factor of m (2 <= m <= limit).
  std::uint64_t spf(std::uint64_t m) const {
    if (m < 2) throw domain_error("spf: argument must be >= 2");
    if (is_prime(m)) return m;
    for (std::uint64_t p : primes_) {
      if (m % p == 0) return p;
      if (p * p > m) break;
    }
    return m;
  }

  /// Least-prime-factor lookup for the segment [lo, hi], sieved rather than
  /// stored for the whole range.
  std::vector<std::uint64_t> spf_segment(std::uint64_t lo, std::uint64_t hi) const {
    if (lo < 2 || hi < lo) throw domain_error("spf_segment: need 2 <= lo <= hi");
    require_in_range(hi);
    std::vector<std::uint64_t> out(hi - lo + 1, 0);
    for (std::uint64_t p : primes_) {
      if (p * p > hi) break;
      for (std::uint64_t m = std::max(p * p, (lo + p - 1) / p * p); m <= hi; m += p)
        if (out[m - lo] == 0) out[m - lo] = p;
    }
    for (std::uint64_t m = lo; m <= hi; ++m)
      if (out[m - lo] == 0) out[m - lo] = m;
    return out;
  }

  friend PrimeTable build_prime_table(std::uint64_t limit, SieveOptions opts);

 private:
  void require_in_range(std::uint64_t x) const {
    if (x > limit_)
      throw range_error("argument " + std::to_string(x) + " exceeds table limit " + std::to_string(limit_));
  }

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> odd_bits_;  // bit k <=> 2k+1 is prime
};

/// Builds the table for [2, limit]. Segments are sieved independently (and in
/// parallel when opts.threads > 1) and concatenated in order, so the result
/// does not depend on the worker count.
inline PrimeTable build_prime_table(std::uint64_t limit, SieveOptions opts = {}) {
  if (limit < 2) throw domain_error("build_prime_table: limit must be >= 2");
  if (opts.segment_size < 64) throw domain_error("build_prime_table: segment size too small");

  PrimeTable table;
  table.limit_ = limit;
  const std::uint64_t root = isqrt(limit);
  const auto base = simple_sieve(root);

  // Odd-only segments over [seg_lo, seg_hi].
  const std::uint64_t seg = opts.segment_size;
  const std::uint64_t segments = (limit + seg) / seg;
  auto chunks = parallel_map<std::vector<std::uint64_t>>(segments, opts.threads, [&](std::size_t s) {
    const std::uint64_t seg_lo = s * seg;
    const std::uint64_t seg_hi = std::min(limit, seg_lo + seg - 1);
    std::vector<std::uint64_t> found;
    if (seg_lo > seg_hi) return found;
    const std::uint64_t odd_lo = seg_lo | 1u;
    if (odd_lo > seg_hi) {
      if (seg_lo <= 2 && seg_hi >= 2) found.push_back(2);
      return found;
    }
    const std::uint64_t count = (seg_hi - odd_lo) / 2 + 1;
    std::vector<char> composite(count, 0);
    for (std::uint64_t p : base) {
      if (p == 2) continue;
      std::uint64_t start = std::max(p * p, (odd_lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t m = start; m <= seg_hi; m += 2 * p) composite[(m - odd_lo) / 2] = 1;
    }
    if (seg_lo <= 2 && seg_hi >= 2) found.push_back(2);
    for (std::uint64_t k = 0; k < count; ++k) {
      const std::uint64_t m = odd_lo + 2 * k;
      if (m >= 3 && !composite[k]) found.push_back(m);
    }
    return found;
  });

  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  table.primes_.reserve(total);
  for (auto& c : chunks) table.primes_.insert(table.primes_.end(), c.begin(), c.end());

  table.odd_bits_.assign(limit / 128 + 1, 0);
  for (std::uint64_t p : table.primes_) {
    if (p == 2) continue;
    const std::uint64_t idx = p / 2;
    table.odd_bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }
  return table;
}

/// pi(x) for real x. Values below 2 give 0.
inline std::uint64_t prime_count(double x, const PrimeTable& table) {
  if (!(x >= 2.0)) return 0;
  if (x > static_cast<double>(table.limit()))
    throw range_error("prime_count: x beyond table limit");
  return table.pi(static_cast<std::uint64_t>(std::floor(x)));
}

inline std::uint64_t nth_prime(std::uint64_t n, const PrimeTable& table) { return table.nth(n); }

/// An integer interval [lo, hi] together with a finite set J of distinct primes.
class IntervalSpec {
 public:
  IntervalSpec(std::int64_t lo, std::int64_t hi, std::vector<std::uint64_t> prime_set)
      : lo_(lo), hi_(hi), primes_(std::move(prime_set)) {
    if (lo_ > hi_) throw domain_error("IntervalSpec: lo must not exceed hi");
    (void)checked_add(checked_add(hi_, -lo_), 1);
    std::vector<std::uint64_t> sorted = primes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw domain_error("IntervalSpec: prime set has repeated elements");
    for (std::uint64_t p : primes_)
      if (!is_prime_trial(p)) throw domain_error("IntervalSpec: " + std::to_string(p) + " is not prime");
  }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::int64_t size() const { return hi_ - lo_ + 1; }
  const std::vector<std::uint64_t>& prime_set() const { return primes_; }

 private:
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::uint64_t> primes_;
};

/// |{m in [lo, hi] : gcd(m, prod J) != 1}| by marking multiples of each p in
/// J segment by segment. m = 0 is divisible by every p, so it always counts
/// when J is nonempty.
inline std::int64_t noncoprime_count(const IntervalSpec& spec,
                                     std::uint64_t segment_size = default_segment_size) {
  if (spec.prime_set().empty()) return 0;
  std::int64_t total = 0;
  std::vector<char> mark;
  const auto seg = static_cast<std::int64_t>(segment_size);
  for (std::int64_t lo = spec.lo();; ) {
    const std::int64_t hi = (spec.hi() - lo < seg) ? spec.hi() : lo + seg - 1;
    const std::int64_t len = hi - lo + 1;
    mark.assign(static_cast<std::size_t>(len), 0);
    for (std::uint64_t up : spec.prime_set()) {
      const auto p = static_cast<std::int64_t>(up);
      for (std::int64_t m = first_multiple_at_or_above(lo, p) - lo; m < len; m += p)
        mark[static_cast<std::size_t>(m)] = 1;
    }
    total += std::count(mark.begin(), mark.end(), char{1});
    if (hi == spec.hi()) break;
    lo = hi + 1;
  }
  return total;
}

inline std::int64_t coprime_count(const IntervalSpec& spec) { return spec.size() - noncoprime_count(spec); }

}  // namespace foldsieve
