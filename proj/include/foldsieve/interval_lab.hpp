#pragma once

// Window discrepancies of non-coprimality counts, the 5|J|^2/8 bound and the
// h-value identity.

#include "foldsieve/common.hpp"
#include "foldsieve/sieve_core.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <vector>

namespace foldsieve {

/// Which window the shifted window is compared against: [0, i-1] or [1, i].
enum class ReferenceWindow { base0, base1 };

struct DiscrepancyRecord {
  std::uint64_t n = 0;
  std::int64_t i = 0;
  std::int64_t k = 0;
  std::int64_t discrepancy = 0;
  rational bound;        // 5 n^2 / 8
  rational ratio_exact;  // discrepancy / n^2
  double ratio = 0.0;    // ratio_exact to 15 significant digits
};

/// Rounds to 15 significant digits, the reporting precision for ratios.
inline double round_15_significant(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  return std::strtod(buf, nullptr);
}

/// |{1+k <= m <= i+k : gcd != 1}| - |{ref window of length i : gcd != 1}|.
inline std::int64_t discrepancy(std::int64_t i, std::int64_t k, std::span<const std::uint64_t> J,
                                ReferenceWindow ref = ReferenceWindow::base1) {
  if (i < 1) throw domain_error("discrepancy: window length must be positive");
  if (checked_add(1, k) < 0) throw domain_error("discrepancy: shifted window has a negative endpoint");
  const std::vector<std::uint64_t> primes(J.begin(), J.end());
  const std::int64_t ref_lo = ref == ReferenceWindow::base0 ? 0 : 1;
  const IntervalSpec shifted(checked_add(1, k), checked_add(i, k), primes);
  const IntervalSpec reference(ref_lo, ref_lo + i - 1, primes);
  return noncoprime_count(shifted) - noncoprime_count(reference);
}

inline rational theorem1_bound(std::size_t set_size) {
  const auto s = static_cast<long long>(set_size);
  return rational(5 * s * s, 8);
}

inline rational theorem1_bound(std::span<const std::uint64_t> J) { return theorem1_bound(J.size()); }

/// Evaluates
///   sum |D(m)| - sum C(|D(m)|, 2) + sum_{|D(m)| > 2} (C(|D(m)|, 2) - |D(m)| + 1)
/// with D(m) = {p in T : p | m}. Every m with D(m) nonempty contributes exactly
/// one, so the result equals the number of m in V that share a factor with T.
inline std::int64_t h_value(std::span<const std::int64_t> V, std::span<const std::uint64_t> T) {
  std::int64_t singles = 0;
  std::int64_t pairs = 0;
  std::int64_t correction = 0;
  for (std::int64_t m : V) {
    std::int64_t c = 0;
    for (std::uint64_t p : T)
      if (floor_mod(m, static_cast<std::int64_t>(p)) == 0) ++c;
    const std::int64_t c2 = c * (c - 1) / 2;
    singles += c;
    pairs += c2;
    if (c > 2) correction += c2 - c + 1;
  }
  return singles - pairs + correction;
}

/// For each n in [n_lo, n_hi]: i = k = (p_n^2 + 1)/2, J = P(n). Records come
/// back in ascending n whatever the thread count.
inline std::vector<DiscrepancyRecord> ratio_scan(std::uint64_t n_lo, std::uint64_t n_hi, const PrimeTable& table,
                                                 unsigned threads = 1,
                                                 ReferenceWindow ref = ReferenceWindow::base1) {
  if (n_lo < 4 || n_hi < n_lo) throw domain_error("ratio_scan: need 4 <= n_lo <= n_hi");
  if (n_hi > table.size()) throw range_error("ratio_scan: table does not reach p_n_hi");
  const auto all = table.primes();
  return parallel_map<DiscrepancyRecord>(n_hi - n_lo + 1, threads, [&](std::size_t idx) {
    const std::uint64_t n = n_lo + idx;
    const auto p = static_cast<std::int64_t>(all[n - 1]);
    const std::int64_t half = (checked_mul(p, p) + 1) / 2;
    DiscrepancyRecord rec;
    rec.n = n;
    rec.i = half;
    rec.k = half;
    rec.discrepancy = discrepancy(half, half, all.first(n), ref);
    rec.bound = theorem1_bound(n);
    rec.ratio_exact = rational(rec.discrepancy, static_cast<long long>(n * n));
    rec.ratio = round_15_significant(to_double(rec.ratio_exact));
    return rec;
  });
}

inline bool within_theorem1_bound(const DiscrepancyRecord& r) { return rational(r.discrepancy) <= r.bound; }

/// Mean of D/n^2 over a scan against log(2)/4.
struct RatioStudy {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  double mean_ratio = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool reproduced = false;
};

inline constexpr double log2_study_target = 0.1733;
inline constexpr double log2_study_tolerance = 0.035;

inline RatioStudy log2_study(std::span<const DiscrepancyRecord> records,
                             double target = log2_study_target, double tolerance = log2_study_tolerance) {
  if (records.empty()) throw domain_error("log2_study: no records");
  compensated_sum<long double> acc;
  for (const auto& r : records) acc.add(static_cast<long double>(to_double(r.ratio_exact)));
  RatioStudy s;
  s.n_lo = records.front().n;
  s.n_hi = records.back().n;
  s.mean_ratio = round_15_significant(static_cast<double>(acc.value() / records.size()));
  s.target = target;
  s.tolerance = tolerance;
  s.reproduced = std::abs(s.mean_ratio - target) <= tolerance;
  return s;
}

}  // namespace foldsieve
