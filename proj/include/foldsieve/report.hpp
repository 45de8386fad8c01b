#pragma once

// JSON report envelope, per-record serialisation, CSV projection and the
// published-constant catalogue.

#include "foldsieve/analytic_bounds.hpp"
#include "foldsieve/folded_scale.hpp"
#include "foldsieve/interval_lab.hpp"
#include "foldsieve/totient_identities.hpp"
#include "foldsieve/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace foldsieve {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Result statuses that make a run exit with code 2.
inline bool is_finding(const std::string& status) {
  return status == "mismatch" || status == "falsification" || status == "paper claim unreproduced";
}

struct ReportEnvelope {
  std::string command;
  json params = json::object();
  json results = json::array();
  json timings;  // null unless requested

  std::string checksum() const { return "fnv1a64:" + hex64(fnv1a64(results.dump())); }

  bool has_finding() const {
    for (const auto& r : results)
      if (r.contains("status") && is_finding(r["status"].get<std::string>())) return true;
    return false;
  }

  json to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["params"] = params;
    j["results"] = results;
    if (!timings.is_null()) j["timings"] = timings;
    j["checksum"] = checksum();
    return j;
  }
};

inline std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// One header line plus one row per result; absent fields stay empty.
inline std::string to_csv(const json& results, const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += "\n";
  for (const auto& r : results) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ",";
      if (r.contains(columns[c])) out += csv_field(r[columns[c]]);
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Record serialisation

inline json to_json(const DiscrepancyRecord& r) {
  json j;
  j["n"] = r.n;
  j["i"] = r.i;
  j["k"] = r.k;
  j["discrepancy"] = r.discrepancy;
  j["bound"] = to_fraction_string(r.bound);
  j["ratio"] = r.ratio;
  j["status"] = within_theorem1_bound(r) ? "pass" : "falsification";
  return j;
}

inline json to_json(const RatioStudy& s) {
  json j;
  j["quantity"] = "mean discrepancy ratio";
  j["n_lo"] = s.n_lo;
  j["n_hi"] = s.n_hi;
  j["mean_ratio"] = s.mean_ratio;
  j["target"] = s.target;
  j["tolerance"] = s.tolerance;
  j["status"] = s.reproduced ? "pass" : "paper claim unreproduced";
  return j;
}

inline json to_json(const IdentityReport& r) {
  json j;
  j["lemma"] = to_string(r.lemma);
  json params = json::object();
  for (const auto& [name, values] : r.params) params[name] = values.size() == 1 ? json(values[0]) : json(values);
  j["params"] = params;
  j["brute"] = r.brute_count;
  j["formula"] = to_fraction_string(r.formula_value);
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"label", c.label}, {"brute", c.brute}, {"formula", to_fraction_string(c.formula)}, {"holds", c.holds}});
  j["checks"] = checks;
  j["status"] = r.matches ? "match" : "mismatch";
  return j;
}

inline json to_json(const BoundReport& r) {
  json j;
  j["quantity"] = r.quantity;
  json params = json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  j["params"] = params;
  j["value"] = r.value;
  if (r.published_value) j["published_value"] = *r.published_value;
  if (r.deviation) j["deviation"] = *r.deviation;
  if (r.tolerance) j["tolerance"] = *r.tolerance;
  j["status"] = to_string(r.status);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const GoldbachRangeResult& r) {
  json j;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["checked"] = r.checked;
  j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  j["max_least_prime"] = r.max_least_prime;
  j["max_least_prime_at"] = r.max_least_prime_at;
  j["status"] = r.passed() ? "pass" : "falsification";
  return j;
}

inline json to_json(const ShiftResult& r, const Selection& sel) {
  json j;
  j["selection"] = sel.describe();
  j["j"] = r.j;
  j["shift"] = r.shift;
  j["modulus"] = r.modulus;
  j["pattern_matches"] = r.pattern_matches;
  j["union_size"] = r.union_size;
  j["window_noncoprime"] = r.window_noncoprime;
  j["status"] = r.found() ? "match" : "mismatch";
  return j;
}

inline json to_json(const TwinCorrespondence& t) {
  json j;
  j["n"] = t.n;
  j["p_n"] = t.p_n;
  j["folded_all_primes"] = t.folded_all_primes;
  j["folded_odd_primes"] = t.folded_odd_primes;
  j["twin_pairs"] = t.twin_pairs;
  j["status"] = t.folded_all_primes == t.twin_pairs ? "match" : "mismatch";
  return j;
}

inline json to_json(const GoldbachBound& g) {
  json j;
  j["quantity"] = "goldbach condition";
  j["z"] = g.z;
  j["n"] = g.n;
  j["s"] = static_cast<double>(g.s);
  j["s_floor"] = g.floor_checked ? json(static_cast<double>(g.s_floor)) : json(nullptr);
  j["s_admissible"] = g.floor_checked ? json(g.s_admissible) : json("unchecked");
  j["u"] = static_cast<double>(g.u);
  j["lhs"] = static_cast<double>(g.lhs);
  j["printed_form"] = static_cast<double>(g.printed_form);
  j["direct_bound"] = static_cast<double>(g.direct_bound);
  j["passes"] = g.passes;
  j["status"] = "report-only";
  return j;
}

// ---------------------------------------------------------------------------
// Published constants

/// The hard-gated published values, in a fixed order.
inline std::vector<BoundReport> published_constant_reports(const PrimeTable& table) {
  const VSequence v(table, v_departure_index + 1);
  const real q1 = q_of(static_cast<real>(dusart_threshold));
  const real q2 = q_of(q1);
  const JRatios jr = j_ratios(v, table);

  std::vector<BoundReport> out;
  out.push_back(compare_absolute("Hi", {{"x", 355991}}, dusart_hi(355991), 30456.026L, 0.001L));
  out.push_back(compare_absolute("pi", {{"x", 355991}}, table.pi(355991), 30456, 0));
  out.push_back(compare_absolute("p", {{"n", 30456}}, table.nth(30456), 355969, 0));
  out.push_back(compare_absolute("p", {{"n", 30457}}, table.nth(30457), 356023, 0));
  out.push_back(compare_absolute("q", {{"r", 355991}}, q1, 356003.80L, 0.01L));
  out.push_back(compare_absolute("q", {{"r", static_cast<double>(q1)}}, q2, 356016.58L, 0.01L, "next iterate"));
  out.push_back(compare_absolute("theta", {{"x", 355969}}, jr.theta_prior, 355685.674752L, 0.001L));
  out.push_back(compare_absolute("j", {{"k", 30457}}, jr.j_first, 392277.800878L, 0.001L));
  out.push_back(compare_absolute("j", {{"k", 30458}}, jr.j_second, 392291.764798L, 0.001L));
  out.push_back(compare_absolute("v", {{"n", 30457}}, v(v_departure_index), 356003.456L, 0.01L));
  out.push_back(compare_absolute("j step ratio", {}, jr.step_ratio, 1.084175L, 0.0005L,
                                 "(j(30458) - j(30457)) / log v(30458)"));
  out.push_back(compare_absolute("j bracket ratio", {}, jr.bracket_ratio, 1.102878L, 0.0005L,
                                 "j(30457) / (theta(p_30456) + log v(30457))"));
  out.push_back(compare_absolute("log j ratio", {}, jr.final_ratio, 1.007662L, 0.000001L,
                                 "log j(30457) / log(theta(p_30456) + log v(30457))"));
  return out;
}

/// Alternative readings and derived quantities shown next to the gates.
inline std::vector<BoundReport> published_constant_diagnostics(const PrimeTable& table) {
  const VSequence v(table, v_departure_index + 1);
  const JRatios jr = j_ratios(v, table);
  const real j2 = jr.j_second;
  std::vector<BoundReport> out;
  out.push_back(report_only("theta plus log v", {{"x", 355969}}, jr.theta_prior + std::log(jr.v_first),
                            "theta(p_30456) + log v(30457)"));
  out.push_back(report_only("theta", {{"x", 356023}}, theta_of(356023, table)));
  out.push_back(report_only("j step ratio over log j", {}, (j2 - jr.j_first) / std::log(j2),
                            "(j(30458) - j(30457)) / log j(30458)"));
  out.push_back(report_only("v seed", {}, v.seed(), "t with Hi(t) = 30456"));
  out.push_back(report_only("v candidate via q", {{"r", 355991}}, q_of(355991), "q_355991 taken as v(30457)"));
  out.push_back(report_only("one minus gamma ratio", {}, 1 - exp_gamma() / (2 * log_ratio_bound),
                            "1 - e^gamma / (2 * 1.007662)"));
  return out;
}

inline BoundReport theorem4_report(const PrimeTable& table) {
  const VSequence v(table, v_departure_index);
  const Theorem4Constant c = theorem4_constant(v);
  BoundReport r = report_only("theorem4 constant", {{"n", v_departure_index}}, c.value,
                              c.within_tolerance ? "within 0.1% of the published value"
                                                 : "outside 0.1% of the published value");
  r.published_value = static_cast<double>(c.published_value);
  r.deviation = static_cast<double>(c.relative_deviation);
  r.tolerance = 1e-3;
  return r;
}

/// Table size that covers every published constant.
inline constexpr std::uint64_t constants_table_limit = 400000;

}  // namespace foldsieve
