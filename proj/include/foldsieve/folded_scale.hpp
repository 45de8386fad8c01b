#pragma once

// The folded number scale: per-prime residue-class selections, their unions,
// the m(m - r) coprimality count, CRT shift intervals, and the twin and
// Goldbach pair counts they correspond to.

#include "foldsieve/common.hpp"
#include "foldsieve/sieve_core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace foldsieve {

inline constexpr std::size_t max_enumeration_primes = 20;

/// One member of R(M, n, r): for every p in P(n) a shift s_p in {0, r}; the
/// realized class for p is {h in M : p | h - s_p}.
class Selection {
 public:
  /// Bit k of `choose_r` set means the (k+1)-th prime uses s = r.
  Selection(std::int64_t lo, std::int64_t hi, std::vector<std::uint64_t> primes, std::int64_t r,
            std::uint32_t choose_r)
      : lo_(lo), hi_(hi), primes_(std::move(primes)), r_(r), choose_r_(choose_r) {
    if (r_ % 2 != 0) throw domain_error("Selection: fold parameter r must be even");
    if (lo_ > hi_) throw domain_error("Selection: empty host interval");
    if (primes_.size() > 32) throw capacity_error("Selection: at most 32 primes");
  }

  std::size_t n() const { return primes_.size(); }
  std::int64_t r() const { return r_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::uint32_t mask() const { return choose_r_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  /// s_p for the k-th prime (0-based).
  std::int64_t shift(std::size_t k) const { return (choose_r_ >> k) & 1u ? r_ : 0; }

  /// Residue of the realized class for the k-th prime.
  std::int64_t residue(std::size_t k) const { return floor_mod(shift(k), static_cast<std::int64_t>(primes_[k])); }

  /// Members of V_{M, p_k, s_k}.
  std::vector<std::int64_t> class_members(std::size_t k) const {
    const auto p = static_cast<std::int64_t>(primes_[k]);
    std::vector<std::int64_t> out;
    const std::int64_t first = lo_ + floor_mod(residue(k) - lo_, p);
    for (std::int64_t m = first; m <= hi_; m += p) out.push_back(m);
    return out;
  }

  /// Indicator over M of the union of the realized classes.
  std::vector<char> union_mask() const {
    std::vector<char> mark(static_cast<std::size_t>(hi_ - lo_ + 1), 0);
    for (std::size_t k = 0; k < primes_.size(); ++k) {
      const auto p = static_cast<std::int64_t>(primes_[k]);
      for (std::int64_t m = floor_mod(residue(k) - lo_, p); m <= hi_ - lo_; m += p) mark[static_cast<std::size_t>(m)] = 1;
    }
    return mark;
  }

  std::string describe() const {
    std::string out;
    for (std::size_t k = 0; k < primes_.size(); ++k) {
      if (k) out += ',';
      out += "s_" + std::to_string(primes_[k]) + "=" + std::to_string(shift(k));
    }
    return out;
  }

 private:
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::uint64_t> primes_;
  std::int64_t r_;
  std::uint32_t choose_r_;
};

struct FoldedCountRecord {
  std::int64_t i = 0;
  std::uint64_t n = 0;
  std::int64_t r = 0;
  std::int64_t coprime_count = 0;
  std::int64_t noncoprime_count = 0;
};

/// All 2^n selections over [1, i] in binary-counter order: primes ascending,
/// s = 0 before s = r.
inline std::vector<Selection> enumerate_selections(std::int64_t i, std::size_t n, std::int64_t r) {
  if (n > max_enumeration_primes) throw capacity_error("enumerate_selections: n above 20");
  if (r % 2 != 0) throw domain_error("enumerate_selections: r must be even");
  const auto primes = first_primes(n);
  if (n > 0 && i < 2 * static_cast<std::int64_t>(primes.back()))
    throw domain_error("enumerate_selections: need i >= 2 p_n for distinct classes");
  std::vector<Selection> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) out.emplace_back(1, i, primes, r, mask);
  return out;
}

inline std::int64_t selection_union_size(const Selection& sel) {
  const auto mark = sel.union_mask();
  return std::count(mark.begin(), mark.end(), char{1});
}

/// Indicator over [lo, hi] of {m : some p in primes divides m or m - r}.
/// Divisibility of a negative m - r is that of its absolute value.
inline std::vector<char> folded_noncoprime_mask(std::int64_t lo, std::int64_t hi, std::span<const std::uint64_t> primes,
                                                std::int64_t r) {
  if (lo > hi) throw domain_error("folded_noncoprime_mask: empty interval");
  std::vector<char> mark(static_cast<std::size_t>(hi - lo + 1), 0);
  const std::int64_t len = hi - lo + 1;
  for (std::uint64_t up : primes) {
    const auto p = static_cast<std::int64_t>(up);
    for (std::int64_t residue : {std::int64_t{0}, floor_mod(r, p)})
      for (std::int64_t m = floor_mod(residue - lo, p); m < len; m += p) mark[static_cast<std::size_t>(m)] = 1;
  }
  return mark;
}

/// Counts m in [1, i] with gcd(m(m - r), prod P(n)) = 1 by class marking.
inline FoldedCountRecord folded_count(std::int64_t i, std::uint64_t n, std::int64_t r, const PrimeTable& table) {
  if (i < 1) throw domain_error("folded_count: i must be positive");
  if (r % 2 != 0) throw domain_error("folded_count: r must be even");
  if (n > table.size()) throw range_error("folded_count: p_n beyond table");
  const auto mark = folded_noncoprime_mask(1, i, table.primes().first(n), r);
  FoldedCountRecord rec;
  rec.i = i;
  rec.n = n;
  rec.r = r;
  rec.noncoprime_count = std::count(mark.begin(), mark.end(), char{1});
  rec.coprime_count = i - rec.noncoprime_count;
  return rec;
}

/// Members m of [lo, hi] with gcd(m(m - r), prod primes) = 1, ascending.
inline std::vector<std::int64_t> folded_coprime_members(std::int64_t lo, std::int64_t hi,
                                                        std::span<const std::uint64_t> primes, std::int64_t r) {
  std::vector<std::int64_t> out;
  if (lo > hi) return out;
  const auto mark = folded_noncoprime_mask(lo, hi, primes, r);
  for (std::size_t k = 0; k < mark.size(); ++k)
    if (!mark[k]) out.push_back(lo + static_cast<std::int64_t>(k));
  return out;
}

/// Indicator over [1, i] of the double union over every selection in R([1,i], n, r).
inline std::vector<char> union_over_selections(std::int64_t i, std::size_t n, std::int64_t r) {
  std::vector<char> acc(static_cast<std::size_t>(i), 0);
  for (const auto& sel : enumerate_selections(i, n, r)) {
    const auto mark = sel.union_mask();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] |= mark[k];
  }
  return acc;
}

struct ShiftResult {
  std::int64_t j = 0;
  std::int64_t shift = 0;            // i_T
  std::int64_t modulus = 0;          // prod P(n)
  bool pattern_matches = false;      // divisibility pattern of [i_T, i_T + j - 1] equals the selection's
  std::int64_t union_size = 0;       // |U T| over [1, j]
  std::int64_t window_noncoprime = 0;
  bool found() const { return pattern_matches && union_size == window_noncoprime; }
};

/// Finds i_T in [1, prod P(n)] with i_T = 1 - s_p (mod p) for every p, by
/// composing the congruences one prime at a time, then checks that the plain
/// divisibility pattern of [i_T, i_T + j - 1] reproduces the selection's
/// classes position by position and that the union size equals the window's
/// non-coprime count.
inline ShiftResult find_shift(std::int64_t j, const Selection& sel) {
  if (j < 1) throw domain_error("find_shift: j must be positive");
  const auto& primes = sel.primes();
  __int128 modulus = 1;
  __int128 x = 0;  // solution modulo `modulus`
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const auto p = static_cast<std::int64_t>(primes[k]);
    const std::int64_t target = floor_mod(1 - sel.shift(k), p);
    // x + modulus * t = target (mod p)
    const std::int64_t m_mod = static_cast<std::int64_t>(modulus % p);
    std::int64_t inv = 1;
    for (std::int64_t c = 1; c < p; ++c)
      if ((m_mod * c) % p == 1) {
        inv = c;
        break;
      }
    const std::int64_t diff = floor_mod(target - static_cast<std::int64_t>(x % p), p);
    const std::int64_t t = (diff * inv) % p;
    x += modulus * t;
    modulus *= p;
    if (modulus > static_cast<__int128>(std::numeric_limits<std::int64_t>::max()))
      throw capacity_error("find_shift: prod P(n) exceeds 64 bits");
  }
  ShiftResult res;
  res.j = j;
  res.modulus = static_cast<std::int64_t>(modulus);
  res.shift = static_cast<std::int64_t>(x == 0 ? modulus : x);

  res.pattern_matches = true;
  for (std::size_t k = 0; k < primes.size() && res.pattern_matches; ++k) {
    const auto p = static_cast<std::int64_t>(primes[k]);
    for (std::int64_t pos = 1; pos <= j; ++pos) {
      const bool in_class = floor_mod(pos - sel.shift(k), p) == 0;
      const bool divides = floor_mod(res.shift + pos - 1, p) == 0;
      if (in_class != divides) {
        res.pattern_matches = false;
        break;
      }
    }
  }
  const Selection over_j(1, j, primes, sel.r(), sel.mask());
  res.union_size = selection_union_size(over_j);
  res.window_noncoprime = noncoprime_count(IntervalSpec(res.shift, checked_add(res.shift, j - 1), primes));
  return res;
}

/// |{p <= limit : p and p - 2 both prime}|.
inline std::uint64_t twin_pair_count(std::uint64_t limit, const PrimeTable& table) {
  if (limit > table.limit()) throw range_error("twin_pair_count: limit beyond table");
  std::uint64_t count = 0;
  const auto ps = table.primes();
  for (std::size_t k = 1; k < ps.size() && ps[k] <= limit; ++k)
    if (ps[k] - ps[k - 1] == 2) ++count;
  return count;
}

/// Unordered prime pairs p <= q with p + q = t.
inline std::uint64_t goldbach_representations(std::uint64_t t, const PrimeTable& table) {
  if (t < 4 || t % 2 != 0) throw domain_error("goldbach_representations: target must be even and >= 4");
  if (t > table.limit()) throw range_error("goldbach_representations: target beyond table");
  std::uint64_t count = 0;
  for (std::uint64_t p : table.primes()) {
    if (p > t / 2) break;
    if (table.is_prime(t - p)) ++count;
  }
  return count;
}

/// Both readings of the twin-pair correspondence at p_n^2: the coprimality
/// product taken over P(n), and over P(n) without 2, against the twin pairs
/// (p - 2, p) with p_n + 2 < p <= p_n^2.
struct TwinCorrespondence {
  std::uint64_t n = 0;
  std::uint64_t p_n = 0;
  std::int64_t folded_all_primes = 0;
  std::int64_t folded_odd_primes = 0;
  std::int64_t twin_pairs = 0;
};

inline TwinCorrespondence twin_correspondence(std::uint64_t n, const PrimeTable& table) {
  if (n < 1 || n > table.size()) throw range_error("twin_correspondence: p_n beyond table");
  const std::uint64_t pn = table.nth(n);
  const std::uint64_t top = pn * pn;
  if (top > table.limit()) throw range_error("twin_correspondence: p_n^2 beyond table");
  const auto all = table.primes().first(n);
  TwinCorrespondence out;
  out.n = n;
  out.p_n = pn;
  const auto hi = static_cast<std::int64_t>(top);
  out.folded_all_primes = static_cast<std::int64_t>(folded_coprime_members(2, hi, all, 2).size());
  out.folded_odd_primes = static_cast<std::int64_t>(folded_coprime_members(2, hi, all.subspan(1), 2).size());
  for (std::uint64_t p : table.primes()) {
    if (p > top) break;
    if (p > pn + 2 && table.is_prime(p - 2)) ++out.twin_pairs;
  }
  return out;
}

}  // namespace foldsieve
