#pragma once

// Explicit-bound layer: Mertens and twin products, the Dusart bound Hi(x),
// its unit-step inverse q_r, the v(n) sequence, j(k), Chebyshev theta, the
// Nicolas ratio and the Goldbach-side bound expressions.
//
// Everything is evaluated in long double with a fixed summation order, so a
// given input always produces the same bits.

#include "foldsieve/common.hpp"
#include "foldsieve/interval_lab.hpp"
#include "foldsieve/sieve_core.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foldsieve {

using real = long double;

inline constexpr real euler_gamma = 0.577215664901532860606512090082L;
inline constexpr real e_number = 2.71828182845904523536028747135L;

/// Hi(x) >= pi(x) is proven from here on.
inline constexpr std::uint64_t dusart_threshold = 355991;
/// First index at which v(c) leaves the primes.
inline constexpr std::uint64_t v_departure_index = 30457;
/// The bound t_x substituted into the Goldbach-side constant.
inline constexpr real log_ratio_bound = 1.007662L;
inline constexpr real theorem4_published_value = 56611211.95L;

inline real exp_gamma() { return std::exp(euler_gamma); }

// ---------------------------------------------------------------------------
// Euler products

struct EulerProducts {
  std::uint64_t n = 0;
  std::optional<rational> mertens_exact;      // prod_{k<=n} (1 - 1/p_k)
  std::optional<rational> twin_factor_exact;  // prod_{2<=k<=n} (1 - 1/(p_k - 1))
  real mertens = 0;
  real twin_factor = 0;
  real combined = 0;
};

inline constexpr std::uint64_t exact_product_limit = 100;

/// exp(sum log1p(-1/(p_k - offset))) over k in [first, n], ascending.
inline real log_space_product(std::span<const std::uint64_t> primes, std::size_t first, real offset) {
  compensated_sum<real> acc;
  for (std::size_t k = first; k < primes.size(); ++k) acc.add(std::log1p(-1.0L / (static_cast<real>(primes[k]) - offset)));
  return std::exp(acc.value());
}

inline real mertens_product(std::uint64_t n, const PrimeTable& table) {
  if (n > table.size()) throw range_error("mertens_product: p_n beyond table");
  return log_space_product(table.primes().first(n), 0, 0);
}

inline real twin_product(std::uint64_t n, const PrimeTable& table) {
  if (n > table.size()) throw range_error("twin_product: p_n beyond table");
  return log_space_product(table.primes().first(n), 1, 1);
}

inline EulerProducts euler_products(std::uint64_t n, const PrimeTable& table) {
  if (n < 1) throw domain_error("euler_products: n must be positive");
  if (n > table.size()) throw range_error("euler_products: p_n beyond table");
  const auto ps = table.primes().first(n);
  EulerProducts out;
  out.n = n;
  if (n <= exact_product_limit) {
    rational m = 1;
    rational t = 1;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const auto p = static_cast<long long>(ps[k]);
      m *= rational(p - 1, p);
      if (k > 0) t *= rational(p - 2, p - 1);
    }
    out.mertens_exact = m;
    out.twin_factor_exact = t;
    out.mertens = m.convert_to<real>();
    out.twin_factor = t.convert_to<real>();
  } else {
    out.mertens = log_space_product(ps, 0, 0);
    out.twin_factor = log_space_product(ps, 1, 1);
  }
  out.combined = out.mertens * out.twin_factor;
  return out;
}

// ---------------------------------------------------------------------------
// Dusart bound and its inverses

inline real dusart_hi(real x) {
  if (!(x > 1)) throw domain_error("dusart_hi: x must exceed 1");
  const real L = std::log(x);
  return x / L * (1 + 1 / L + 2.51L / (L * L));
}

/// d/dx Hi(x).
inline real dusart_hi_derivative(real x) {
  const real L = std::log(x);
  return 1 / L + 0.51L / (L * L * L) - 7.53L / (L * L * L * L);
}

namespace detail {

/// Root of f on [lo, hi] with f(lo) <= 0 <= f(hi), f increasing: bisection
/// down to a relative width of ~1e-12, then Newton polish.
template <class F, class DF>
real increasing_root(F f, DF df, real lo, real hi, const char* who) {
  real flo = f(lo);
  real fhi = f(hi);
  if (flo > 0 || fhi < 0) throw numeric_error(std::string(who) + ": no root in bracket");
  for (int it = 0; it < 200 && (hi - lo) > 1e-12L * std::max<real>(1, std::abs(hi)); ++it) {
    const real mid = lo + (hi - lo) / 2;
    if (f(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  real x = lo + (hi - lo) / 2;
  for (int it = 0; it < 4; ++it) {
    const real d = df(x);
    if (d == 0) break;
    const real next = x - f(x) / d;
    if (!(next >= lo - (hi - lo)) || !(next <= hi + (hi - lo))) break;
    x = next;
  }
  return x;
}

/// x with Hi(x) = target, searched on [lo, hi] where Hi is increasing.
inline real hi_inverse(real target, real lo, real hi) {
  return increasing_root([&](real x) { return dusart_hi(x) - target; }, dusart_hi_derivative, lo, hi, "hi_inverse");
}

/// q_r without the domain restriction; the bracket [r, r + 10 log r] holds
/// the unit step as long as Hi is increasing there.
inline real q_unchecked(real r) {
  return hi_inverse(dusart_hi(r) + 1, r, r + 10 * std::log(r));
}

}  // namespace detail

/// The x >= 355991 with Hi(x) = Hi(r) + 1.
inline real q_of(real r) {
  if (!(r >= static_cast<real>(dusart_threshold))) throw domain_error("q_of: r must be >= 355991");
  return detail::q_unchecked(r);
}

/// t with Hi(t) = 30456, the seed of the v-sequence.
inline real v_seed() {
  const real target = static_cast<real>(v_departure_index - 1);
  return detail::hi_inverse(target, 355000, 357000);
}

/// v(c) for c up to a chosen bound: primes for c <= 30456, then
/// v(30457) = q_t with Hi(t) = 30456 and v(c) = q_{v(c-1)}.
class VSequence {
 public:
  VSequence(const PrimeTable& table, std::uint64_t max_index) : table_(&table), max_index_(max_index) {
    if (table.size() < v_departure_index - 1) throw range_error("VSequence: table must hold p_30456");
    seed_ = v_seed();
    if (max_index >= v_departure_index) {
      tail_.reserve(max_index - v_departure_index + 1);
      real prev = detail::q_unchecked(seed_);
      tail_.push_back(prev);
      for (std::uint64_t c = v_departure_index + 1; c <= max_index; ++c) {
        prev = q_of(prev);
        tail_.push_back(prev);
      }
    }
  }

  real operator()(std::uint64_t c) const {
    if (c == 0) throw domain_error("v: index must be positive");
    if (c < v_departure_index) return static_cast<real>(table_->nth(c));
    if (c > max_index_) throw range_error("v: index beyond computed range");
    return tail_[c - v_departure_index];
  }

  real seed() const { return seed_; }
  std::uint64_t max_index() const { return max_index_; }

 private:
  const PrimeTable* table_;
  std::uint64_t max_index_;
  real seed_ = 0;
  std::vector<real> tail_;
};

inline real v_value(std::uint64_t c, const PrimeTable& table) {
  if (c < v_departure_index) return static_cast<real>(table.nth(c));
  return VSequence(table, c)(c);
}

/// Upper-branch root of y / log y = k.
inline real j_of(real k) {
  if (!(k >= e_number)) throw domain_error("j_of: k must be at least e");
  if (k == e_number) return e_number;
  auto f = [k](real y) { return y - k * std::log(y); };
  auto df = [k](real y) { return 1 - k / y; };
  real hi = 2 * k * std::log(k) + e_number;
  while (f(hi) < 0) hi *= 2;
  return detail::increasing_root(f, df, e_number, hi, "j_of");
}

/// sum_{p <= x} log p, ascending, compensated.
inline real theta_of(real x, const PrimeTable& table) {
  if (x > static_cast<real>(table.limit())) throw range_error("theta_of: x beyond table");
  compensated_sum<real> acc;
  for (std::uint64_t p : table.primes()) {
    if (static_cast<real>(p) > x) break;
    acc.add(std::log(static_cast<real>(p)));
  }
  return acc.value();
}

/// N_k / (phi(N_k) log log N_k) for the primorial N_k, as
/// 1 / (prod (1 - 1/p_j) * log theta(p_k)).
inline real nicolas_ratio(std::uint64_t k, const PrimeTable& table) {
  if (k < 2) throw domain_error("nicolas_ratio: k must be >= 2");
  if (k > table.size()) throw range_error("nicolas_ratio: p_k beyond table");
  compensated_sum<real> log_mertens;
  compensated_sum<real> theta;
  for (std::size_t j = 0; j < k; ++j) {
    const auto p = static_cast<real>(table.primes()[j]);
    log_mertens.add(std::log1p(-1 / p));
    theta.add(std::log(p));
  }
  return std::exp(-(log_mertens.value() + std::log(std::log(theta.value()))));
}

/// (j(-1/log(cj) + M_n) + n + 5n^2/8) / (j M_n), M_n = prod_{k<=n} (1 - 1/p_k).
inline real u_of(std::int64_t j, std::uint64_t n, int c, const PrimeTable& table) {
  if (j < 17) throw domain_error("u_of: j must be >= 17");
  if (n < 1) throw domain_error("u_of: n must be >= 1");
  if (c != 1 && c != 2) throw domain_error("u_of: c must be 1 or 2");
  const real M = mertens_product(n, table);
  const auto jr = static_cast<real>(j);
  const auto nr = static_cast<real>(n);
  return (jr * (-1 / std::log(c * jr) + M) + nr + 5 * nr * nr / 8) / (jr * M);
}

// ---------------------------------------------------------------------------
// Goldbach-side bounds

struct GoldbachBound {
  std::int64_t z = 0;
  std::uint64_t n = 0;
  real s = 0;
  real s_floor = 0;        // -pi(z)/z + M_n
  bool floor_checked = false;
  bool s_admissible = false;
  real u = 0;              // (z s + n + 5n^2/8) / (z M_n)
  real lhs = 0;            // (1 - 2u) z M_n T_n
  real printed_form = 0;   // z - (1 - 2u) z M_n prod_{k=1}^n (1 - 1/(p_k - 1)); the k = 1 factor is 0
  real direct_bound = 0;      // z - 2 (z s + n + 5n^2/8) T_n
  bool passes = false;     // lhs >= 1
};

/// Evaluates the Goldbach condition for 2z with the interval length bound to
/// z. T_n runs over k = 2..n. The floor on s needs pi(z) and is only checked
/// when z is inside the table.
inline GoldbachBound theorem3_check(std::int64_t z, std::uint64_t n, real s, const PrimeTable& table) {
  if (n < 1 || n + 1 > table.size()) throw range_error("theorem3_check: p_{n+1} beyond table");
  const auto pn = static_cast<real>(table.nth(n));
  const auto pn1 = static_cast<real>(table.nth(n + 1));
  const auto zr = static_cast<real>(z);
  if (!(pn * pn / 2 < zr && zr < pn1 * pn1 / 2)) throw domain_error("theorem3_check: z outside (p_n^2/2, p_{n+1}^2/2)");
  const real M = mertens_product(n, table);
  const real T = twin_product(n, table);
  const auto nr = static_cast<real>(n);
  GoldbachBound g;
  g.z = z;
  g.n = n;
  g.s = s;
  if (static_cast<std::uint64_t>(z) <= table.limit()) {
    g.floor_checked = true;
    g.s_floor = -static_cast<real>(table.pi(static_cast<std::uint64_t>(z))) / zr + M;
    g.s_admissible = s >= g.s_floor;
  }
  const real numer = zr * s + nr + 5 * nr * nr / 8;
  g.u = numer / (zr * M);
  g.lhs = (1 - 2 * g.u) * zr * M * T;
  g.printed_form = zr - (1 - 2 * g.u) * zr * M * (T * 0);  // (1 - 1/(2 - 1)) = 0
  g.direct_bound = zr - 2 * numer * T;
  g.passes = g.lhs >= 1;
  return g;
}

/// The s_n substituted on the Goldbach-side constant path:
/// 1 - e^gamma / (2 * 1.007662) - n / z.
inline real theorem4_slack(std::uint64_t n, real z) {
  return 1 - exp_gamma() / (2 * log_ratio_bound) - static_cast<real>(n) / z;
}

struct Theorem4Constant {
  real v_last = 0;          // v(30457)
  real u = 0;
  real one_minus_ratio = 0; // 1 - e^gamma / (2 * 1.007662)
  real mertens_v = 0;       // prod_{j<=30457} (1 - 1/v(j))
  real twin_v = 0;          // prod_{2<=j<=30457} (1 - 1/(v(j) - 1))
  real value = 0;
  real published_value = theorem4_published_value;
  real relative_deviation = 0;
  bool within_tolerance = false;  // 0.1% relative
};

inline Theorem4Constant theorem4_constant(const VSequence& v) {
  const std::uint64_t n = v_departure_index;
  if (v.max_index() < n) throw range_error("theorem4_constant: v-sequence must reach 30457");
  compensated_sum<real> log_m;
  compensated_sum<real> log_t;
  for (std::uint64_t j = 1; j <= n; ++j) {
    const real vj = v(j);
    log_m.add(std::log1p(-1 / vj));
    if (j >= 2) log_t.add(std::log1p(-1 / (vj - 1)));
  }
  Theorem4Constant out;
  out.v_last = v(n);
  out.mertens_v = std::exp(log_m.value());
  out.twin_v = std::exp(log_t.value());
  out.one_minus_ratio = 1 - exp_gamma() / (2 * log_ratio_bound);
  const real half_sq = out.v_last * out.v_last / 2;
  const auto nr = static_cast<real>(n);
  out.u = (half_sq * out.one_minus_ratio + 5 * nr * nr / 8) / (half_sq * out.mertens_v);
  out.value = half_sq * (1 - 2 * out.u) * out.mertens_v * out.twin_v;
  out.relative_deviation = (out.value - out.published_value) / out.published_value;
  out.within_tolerance = std::abs(out.relative_deviation) <= 1e-3L;
  return out;
}

struct OlqRatio {
  std::uint64_t n = 0;
  real lhs = 0;
  real log_v = 0;
  real gap = 0;
  real scale = 0;             // log^2 v(n) / v(n)
  real implied_constant = 0;  // gap / scale
  real constant = 25;
  bool within = false;        // gap <= constant * scale
};

/// ((v(n+1)^2/log v(n+1)^2 - v(n)^2/log v(n)^2) / (2((n+1)^2 - n^2)), log v(n)).
inline OlqRatio olq_ratio(std::uint64_t n, const VSequence& v, real constant = 25) {
  if (n < v_departure_index) throw domain_error("olq_ratio: n must be >= 30457");
  const real a = v(n);
  const real b = v(n + 1);
  const auto nr = static_cast<real>(n);
  OlqRatio out;
  out.n = n;
  out.lhs = (b * b / std::log(b * b) - a * a / std::log(a * a)) / (2 * ((nr + 1) * (nr + 1) - nr * nr));
  out.log_v = std::log(a);
  out.gap = std::abs(out.lhs - out.log_v);
  out.scale = out.log_v * out.log_v / a;
  out.implied_constant = out.gap / out.scale;
  out.constant = constant;
  out.within = out.gap <= constant * out.scale;
  return out;
}

/// The bracketing values behind the log p_s / log theta bound.
struct JRatios {
  real j_first = 0;       // j(30457)
  real j_second = 0;      // j(30458)
  real theta_prior = 0;   // theta(p_30456)
  real v_first = 0;       // v(30457)
  real v_second = 0;      // v(30458)
  real step_ratio = 0;    // (j(30458) - j(30457)) / log v(30458)
  real bracket_ratio = 0; // j(30457) / (theta(p_30456) + log v(30457))
  real final_ratio = 0;   // log j(30457) / log(theta(p_30456) + log v(30457))
};

inline JRatios j_ratios(const VSequence& v, const PrimeTable& table) {
  const std::uint64_t n = v_departure_index;
  JRatios out;
  out.j_first = j_of(static_cast<real>(n));
  out.j_second = j_of(static_cast<real>(n + 1));
  out.theta_prior = theta_of(static_cast<real>(table.nth(n - 1)), table);
  out.v_first = v(n);
  out.v_second = v(n + 1);
  out.step_ratio = (out.j_second - out.j_first) / std::log(out.v_second);
  out.bracket_ratio = out.j_first / (out.theta_prior + std::log(out.v_first));
  out.final_ratio = std::log(out.j_first) / std::log(out.theta_prior + std::log(out.v_first));
  return out;
}

/// i (1 - 1/2 prod_{q in (P(n)\{2}) u {w}} (1 - 2/q)) with
/// w = i M_n / (j_n - i (1 - M_n)). When w coincides with an odd prime of P(n)
/// it is still multiplied in once more, as the set union would not.
struct UnionBound {
  real w = 0;
  real value = 0;
};

inline UnionBound union_bound(std::int64_t i, std::uint64_t n, real j_bound, const PrimeTable& table) {
  if (i < 1 || n < 1) throw domain_error("union_bound: need i, n >= 1");
  const real M = mertens_product(n, table);
  const auto ir = static_cast<real>(i);
  UnionBound out;
  out.w = ir * M / (j_bound - ir * (1 - M));
  real prod = 1;
  for (std::size_t k = 1; k < n; ++k) prod *= 1 - 2 / static_cast<real>(table.primes()[k]);
  bool w_is_member = false;
  for (std::size_t k = 1; k < n; ++k)
    if (static_cast<real>(table.primes()[k]) == out.w) w_is_member = true;
  if (!w_is_member) prod *= 1 - 2 / out.w;
  out.value = ir * (1 - prod / 2);
  return out;
}

/// The upper bound j_n on a selection union used by union_bound: the
/// non-coprime count of [0, i-1] plus 5n^2/8.
inline real union_default_j(std::int64_t i, std::uint64_t n, const PrimeTable& table) {
  const std::vector<std::uint64_t> J(table.primes().begin(), table.primes().begin() + static_cast<std::ptrdiff_t>(n));
  return static_cast<real>(noncoprime_count(IntervalSpec(0, i - 1, J))) + theorem1_bound(n).convert_to<real>();
}

// ---------------------------------------------------------------------------
// Reporting

enum class BoundStatus { match, mismatch, report_only };

inline const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::match: return "match";
    case BoundStatus::mismatch: return "mismatch";
    case BoundStatus::report_only: return "report-only";
  }
  return "?";
}

struct BoundReport {
  std::string quantity;
  std::vector<std::pair<std::string, double>> params;
  double value = 0;
  std::optional<double> published_value;
  std::optional<double> deviation;
  std::optional<double> tolerance;
  BoundStatus status = BoundStatus::report_only;
  std::string note;
};

/// Absolute comparison against a published value.
inline BoundReport compare_absolute(std::string quantity, std::vector<std::pair<std::string, double>> params,
                                    real value, real published, real tolerance, std::string note = {}) {
  BoundReport r;
  r.quantity = std::move(quantity);
  r.params = std::move(params);
  r.value = static_cast<double>(value);
  r.published_value = static_cast<double>(published);
  r.deviation = static_cast<double>(value - published);
  r.tolerance = static_cast<double>(tolerance);
  r.status = std::abs(value - published) <= tolerance ? BoundStatus::match : BoundStatus::mismatch;
  r.note = std::move(note);
  return r;
}

inline BoundReport report_only(std::string quantity, std::vector<std::pair<std::string, double>> params, real value,
                               std::string note = {}) {
  BoundReport r;
  r.quantity = std::move(quantity);
  r.params = std::move(params);
  r.value = static_cast<double>(value);
  r.status = BoundStatus::report_only;
  r.note = std::move(note);
  return r;
}

}  // namespace foldsieve
