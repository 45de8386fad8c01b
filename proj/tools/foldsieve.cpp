// foldsieve: command-line front end.
//
// Exit codes: 0 clean, 1 usage error, 2 mismatch or falsification present,
// 3 internal error.

#include "foldsieve/foldsieve.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace foldsieve;

namespace {

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  bool timings = false;
};

void progress(const std::string& msg) { std::cerr << "foldsieve: " << msg << '\n'; }

/// Smallest table limit that surely holds the first n primes.
std::uint64_t limit_for_count(std::uint64_t n) {
  if (n < 6) return 15;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 10;
}

PrimeTable make_table(std::uint64_t limit, unsigned threads) {
  progress("sieving to " + std::to_string(limit));
  return build_prime_table(std::max<std::uint64_t>(limit, 2), {default_segment_size, threads});
}

const std::map<std::string, std::vector<std::string>> csv_columns = {
    {"primes", {"quantity", "argument", "value", "status"}},
    {"theorem1", {"n", "i", "k", "discrepancy", "bound", "ratio", "mean_ratio", "status"}},
    {"fold", {"quantity", "i", "n", "r", "coprime", "noncoprime", "union_size", "status"}},
    {"shift", {"selection", "j", "shift", "modulus", "pattern_matches", "union_size", "window_noncoprime", "status"}},
    {"twin", {"quantity", "limit", "n", "value", "twin_pairs", "status"}},
    {"goldbach", {"quantity", "lo", "hi", "checked", "first_failure", "max_least_prime", "target", "value", "status"}},
    {"identities", {"lemma", "params", "brute", "formula", "status"}},
    {"bounds", {"quantity", "params", "value", "published_value", "deviation", "tolerance", "status", "note"}},
    {"report", {"quantity", "lemma", "params", "value", "published_value", "deviation", "tolerance", "brute", "formula",
                "status", "note"}},
};

std::string csv_help() {
  std::string out = "CSV columns (JSON is canonical; CSV is a projection):\n";
  for (const auto& [cmd, cols] : csv_columns) {
    out += "  " + cmd + ":";
    for (const auto& c : cols) out += " " + c;
    out += "\n";
  }
  return out;
}

json vec_json(const std::vector<std::uint64_t>& v) { return json(v); }

// ---------------------------------------------------------------------------

struct PrimesArgs {
  std::uint64_t limit = 1000000;
  std::vector<std::uint64_t> nth;
  std::vector<std::uint64_t> pi;
};

void run_primes(const PrimesArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"limit", a.limit}, {"nth", vec_json(a.nth)}, {"pi", vec_json(a.pi)}};
  const auto table = make_table(a.limit, cfg.threads);
  env.results.push_back({{"quantity", "count"}, {"argument", a.limit}, {"value", table.size()}, {"status", "report-only"}});
  for (auto n : a.nth)
    env.results.push_back({{"quantity", "nth"}, {"argument", n}, {"value", table.nth(n)}, {"status", "report-only"}});
  for (auto x : a.pi)
    env.results.push_back({{"quantity", "pi"}, {"argument", x}, {"value", table.pi(x)}, {"status", "report-only"}});
}

struct Theorem1Args {
  std::uint64_t n_lo = 4;
  std::uint64_t n_hi = 200;
  std::string ref = "base1";
  bool study = false;
  double target = log2_study_target;
  double tolerance = log2_study_tolerance;
};

void run_theorem1(const Theorem1Args& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"n_lo", a.n_lo}, {"n_hi", a.n_hi}, {"ref", a.ref}, {"study", a.study}};
  if (a.study) {
    env.params["target"] = a.target;
    env.params["tolerance"] = a.tolerance;
  }
  const auto table = make_table(limit_for_count(a.n_hi), cfg.threads);
  const auto ref = a.ref == "base0" ? ReferenceWindow::base0 : ReferenceWindow::base1;
  const auto records = ratio_scan(a.n_lo, a.n_hi, table, cfg.threads, ref);
  for (const auto& r : records) env.results.push_back(to_json(r));
  if (a.study) env.results.push_back(to_json(log2_study(records, a.target, a.tolerance)));
}

struct FoldArgs {
  std::int64_t i = 1000;
  std::uint64_t n = 4;
  std::int64_t r = 2;
};

void run_fold(const FoldArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"i", a.i}, {"n", a.n}, {"r", a.r}};
  const auto table = make_table(limit_for_count(a.n), cfg.threads);
  const auto rec = folded_count(a.i, a.n, a.r, table);
  env.results.push_back({{"quantity", "folded count"},
                         {"i", rec.i},
                         {"n", rec.n},
                         {"r", rec.r},
                         {"coprime", rec.coprime_count},
                         {"noncoprime", rec.noncoprime_count},
                         {"status", "report-only"}});
  const auto unioned = union_over_selections(a.i, a.n, a.r);
  const auto folded = folded_noncoprime_mask(1, a.i, table.primes().first(a.n), a.r);
  env.results.push_back({{"quantity", "union identity"},
                         {"i", a.i},
                         {"n", a.n},
                         {"r", a.r},
                         {"selections", std::uint64_t{1} << a.n},
                         {"union_size", std::count(unioned.begin(), unioned.end(), char{1})},
                         {"noncoprime", rec.noncoprime_count},
                         {"status", unioned == folded ? "match" : "mismatch"}});
}

struct ShiftArgs {
  std::uint64_t n = 3;
  std::int64_t r = 2;
  std::int64_t j = 500;
};

void run_shift(const ShiftArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"n", a.n}, {"r", a.r}, {"j", a.j}};
  const auto primes = first_primes(a.n);
  const std::int64_t host = std::max<std::int64_t>(a.j, 2 * static_cast<std::int64_t>(primes.empty() ? 1 : primes.back()));
  const auto sels = enumerate_selections(host, a.n, a.r);
  const auto found = parallel_map<ShiftResult>(sels.size(), cfg.threads, [&](std::size_t k) { return find_shift(a.j, sels[k]); });
  for (std::size_t k = 0; k < sels.size(); ++k) env.results.push_back(to_json(found[k], sels[k]));
}

struct TwinArgs {
  std::uint64_t limit = 1000000;
  std::uint64_t correspondence = 0;
};

void run_twin(const TwinArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"limit", a.limit}, {"correspondence", a.correspondence}};
  std::uint64_t limit = a.limit;
  if (a.correspondence > 0) {
    const auto p = first_primes(a.correspondence).back();
    limit = std::max(limit, p * p);
  }
  const auto table = make_table(limit, cfg.threads);
  env.results.push_back({{"quantity", "twin pairs"},
                         {"limit", a.limit},
                         {"value", twin_pair_count(a.limit, table)},
                         {"status", "report-only"}});
  if (a.correspondence > 0) {
    auto row = to_json(twin_correspondence(a.correspondence, table));
    row["quantity"] = "twin correspondence";
    env.results.push_back(row);
  }
}

struct GoldbachArgs {
  std::vector<std::uint64_t> range = {4, 1000000};
  std::vector<std::uint64_t> targets;
};

void run_goldbach(const GoldbachArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  if (a.range.size() != 2) throw domain_error("--range takes two values");
  env.params = {{"range", vec_json(a.range)}, {"targets", vec_json(a.targets)}};
  std::uint64_t limit = a.range[1];
  for (auto t : a.targets) limit = std::max(limit, t);
  const auto table = make_table(limit, cfg.threads);
  progress("scanning even numbers in [" + std::to_string(a.range[0]) + ", " + std::to_string(a.range[1]) + "]");
  auto row = to_json(goldbach_verify_range(a.range[0], a.range[1], table, cfg.threads));
  json out;
  out["quantity"] = "goldbach range";
  out.update(row);
  env.results.push_back(out);
  for (auto t : a.targets)
    env.results.push_back({{"quantity", "representations"},
                           {"target", t},
                           {"value", goldbach_representations(t, table)},
                           {"status", "report-only"}});
}

struct IdentityArgs {
  std::string lemma = "bn";
  std::vector<std::uint64_t> J;
  std::int64_t s = 0;
  std::int64_t t = 2;
  std::uint64_t n = 1;
  std::vector<std::uint64_t> V;
  std::uint64_t b = 0;
  std::vector<std::uint64_t> S;
  std::uint64_t count = 200;
  std::uint64_t max_period = 10000000;
};

void run_identities(const IdentityArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"lemma", a.lemma}};
  if (a.lemma == "bn") {
    env.params.update({{"J", vec_json(a.J)}, {"s", a.s}});
    env.results.push_back(to_json(bn_check(a.J, a.s)));
  } else if (a.lemma == "bm") {
    env.params.update({{"J", vec_json(a.J)}, {"s", a.s}, {"t", a.t}});
    env.results.push_back(to_json(bm_check(a.J, a.s, a.t)));
  } else if (a.lemma == "cap") {
    env.params.update({{"n", a.n}, {"V", vec_json(a.V)}, {"b", a.b}});
    env.results.push_back(to_json(cap_check(a.n, a.V, a.b)));
  } else if (a.lemma == "mab") {
    env.params.update({{"n", a.n}, {"V", vec_json(a.V)}, {"b", a.b}, {"S", vec_json(a.S)}});
    env.results.push_back(to_json(mab_check(a.n, a.V, a.b, a.S)));
  } else if (a.lemma == "bn-sweep" || a.lemma == "cap-sweep") {
    env.params.update({{"count", a.count}, {"max_period", a.max_period}, {"seed", cfg.seed}});
    progress("running " + std::to_string(a.count) + " instances");
    const auto reports = a.lemma == "bn-sweep" ? bn_sweep(a.count, cfg.seed, a.max_period, cfg.threads)
                                               : cap_sweep(a.count, cfg.seed, a.max_period, cfg.threads);
    for (const auto& r : reports) env.results.push_back(to_json(r));
  } else {
    throw domain_error("unknown lemma '" + a.lemma + "'");
  }
}

struct BoundsArgs {
  std::string which = "hi";
  double x = 355991;
  std::uint64_t n = 30457;
  double k = 30457;
  double r = 355991;
  std::int64_t j = 17;
  int c = 1;
  std::int64_t z = 61;
  double s = 0;
  std::int64_t i = 100;
};

std::vector<json> bounds_rows(const BoundsArgs& a, const RunConfig& cfg, json& params) {
  std::vector<json> rows;
  auto one = [&](const BoundReport& b) { rows.push_back(to_json(b)); };
  const std::string& w = a.which;
  params = {{"which", w}};
  if (w == "hi") {
    params["x"] = a.x;
    one(report_only("Hi", {{"x", a.x}}, dusart_hi(a.x)));
  } else if (w == "q") {
    params["r"] = a.r;
    one(report_only("q", {{"r", a.r}}, q_of(a.r)));
  } else if (w == "j") {
    params["k"] = a.k;
    one(report_only("j", {{"k", a.k}}, j_of(a.k)));
  } else if (w == "mertens") {
    params["n"] = a.n;
    const auto table = make_table(limit_for_count(a.n), cfg.threads);
    const auto e = euler_products(a.n, table);
    auto b = report_only("mertens", {{"n", static_cast<double>(a.n)}}, e.mertens);
    if (e.mertens_exact) b.note = to_fraction_string(*e.mertens_exact);
    one(b);
    auto t = report_only("twin factor", {{"n", static_cast<double>(a.n)}}, e.twin_factor);
    if (e.twin_factor_exact) t.note = to_fraction_string(*e.twin_factor_exact);
    one(t);
  } else if (w == "theta") {
    params["x"] = a.x;
    const auto table = make_table(static_cast<std::uint64_t>(a.x), cfg.threads);
    one(report_only("theta", {{"x", a.x}}, theta_of(a.x, table)));
  } else if (w == "nicolas") {
    params["n"] = a.n;
    const auto table = make_table(limit_for_count(a.n), cfg.threads);
    const real ratio = nicolas_ratio(a.n, table);
    BoundReport b = report_only("nicolas ratio", {{"k", static_cast<double>(a.n)}}, ratio);
    b.status = ratio > exp_gamma() ? BoundStatus::match : BoundStatus::mismatch;
    b.note = "compared against e^gamma";
    one(b);
  } else if (w == "u") {
    params.update({{"j", a.j}, {"n", a.n}, {"c", a.c}});
    const auto table = make_table(limit_for_count(a.n), cfg.threads);
    one(report_only("u", {{"j", static_cast<double>(a.j)}, {"n", static_cast<double>(a.n)}, {"c", a.c}},
                    u_of(a.j, a.n, a.c, table)));
  } else if (w == "theorem3") {
    params.update({{"z", a.z}, {"n", a.n}, {"s", a.s}});
    const auto table = make_table(std::max<std::uint64_t>(limit_for_count(a.n + 1), static_cast<std::uint64_t>(a.z)), cfg.threads);
    rows.push_back(to_json(theorem3_check(a.z, a.n, a.s, table)));
  } else if (w == "union") {
    params.update({{"i", a.i}, {"n", a.n}});
    const auto table = make_table(limit_for_count(a.n), cfg.threads);
    const real jn = union_default_j(a.i, a.n, table);
    const auto z = union_bound(a.i, a.n, jn, table);
    auto b = report_only("union bound", {{"i", static_cast<double>(a.i)}, {"n", static_cast<double>(a.n)}}, z.value);
    b.note = "w = " + std::to_string(static_cast<double>(z.w));
    one(b);
  } else if (w == "v" || w == "olq" || w == "theorem4" || w == "ratios" || w == "pi" || w == "p") {
    const auto table = make_table(constants_table_limit, cfg.threads);
    if (w == "pi") {
      params["x"] = a.x;
      one(report_only("pi", {{"x", a.x}}, prime_count(a.x, table)));
    } else if (w == "p") {
      params["n"] = a.n;
      one(report_only("p", {{"n", static_cast<double>(a.n)}}, table.nth(a.n)));
    } else if (w == "v") {
      params["n"] = a.n;
      one(report_only("v", {{"n", static_cast<double>(a.n)}}, v_value(a.n, table)));
    } else if (w == "olq") {
      params["n"] = a.n;
      const VSequence v(table, a.n + 1);
      const auto o = olq_ratio(a.n, v);
      BoundReport b = report_only("olq gap", {{"n", static_cast<double>(a.n)}}, o.gap);
      b.status = o.within ? BoundStatus::match : BoundStatus::mismatch;
      b.tolerance = static_cast<double>(o.constant * o.scale);
      b.note = "implied constant " + std::to_string(static_cast<double>(o.implied_constant));
      one(b);
    } else if (w == "theorem4") {
      progress("iterating the v-sequence");
      one(theorem4_report(table));
    } else {
      for (const auto& b : published_constant_reports(table))
        if (b.quantity.find("ratio") != std::string::npos) one(b);
    }
  } else {
    throw domain_error("unknown bound '" + w + "'");
  }
  return rows;
}

void run_bounds(const BoundsArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  for (auto& row : bounds_rows(a, cfg, env.params)) env.results.push_back(std::move(row));
}

struct ReportArgs {
  std::string set = "all";
};

/// q_r - q_{r-1} over a grid of r, flagged when it fails to increase.
BoundReport q_increment_report() {
  const std::vector<double> grid = {356000, 500000, 1000000};
  std::vector<real> steps;
  BoundReport b;
  b.quantity = "q increment";
  std::string note;
  for (double r : grid) {
    steps.push_back(q_of(r) - q_of(r - 1));
    b.params.emplace_back("r", r);
    if (!note.empty()) note += ", ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", static_cast<double>(steps.back()));
    note += buf;
  }
  bool increasing = true;
  for (std::size_t k = 1; k < steps.size(); ++k) increasing = increasing && steps[k] > steps[k - 1];
  b.value = static_cast<double>(steps.back());
  b.status = increasing ? BoundStatus::match : BoundStatus::mismatch;
  b.note = "q_r - q_{r-1} = " + note + (increasing ? " (increasing)" : " (not increasing)");
  return b;
}

void run_report(const ReportArgs& a, const RunConfig& cfg, ReportEnvelope& env) {
  env.params = {{"set", a.set}};
  if (a.set != "all" && a.set != "constants" && a.set != "ledger") throw domain_error("unknown set '" + a.set + "'");
  const auto table = make_table(constants_table_limit, cfg.threads);
  if (a.set == "all" || a.set == "constants") {
    for (const auto& b : published_constant_reports(table)) env.results.push_back(to_json(b));
    for (const auto& b : published_constant_diagnostics(table)) env.results.push_back(to_json(b));
    progress("iterating the v-sequence");
    env.results.push_back(to_json(theorem4_report(table)));
  }
  if (a.set == "all" || a.set == "ledger") {
    const std::vector<std::uint64_t> J = {2, 3, 5, 7};
    env.results.push_back(to_json(bm_check(J, 6, 2)));
    const std::vector<std::uint64_t> V = {3};
    const std::vector<std::uint64_t> S = {1, 2};
    env.results.push_back(to_json(mab_check(2, V, 5, S)));
    const VSequence v(table, v_departure_index + 1);
    const auto o = olq_ratio(v_departure_index, v);
    BoundReport b = report_only("olq gap", {{"n", static_cast<double>(v_departure_index)}}, o.gap);
    b.status = o.within ? BoundStatus::match : BoundStatus::mismatch;
    b.tolerance = static_cast<double>(o.constant * o.scale);
    b.note = "implied constant " + std::to_string(static_cast<double>(o.implied_constant));
    env.results.push_back(to_json(b));
    env.results.push_back(to_json(q_increment_report()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"foldsieve: sieve, folded-scale and explicit-bound experiments"};
  app.footer(csv_help());
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)")->capture_default_str();
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--timings", cfg.timings, "include wall-clock timings in the report");

  PrimesArgs primes_args;
  auto* primes = app.add_subcommand("primes", "prime table queries");
  primes->add_option("--limit", primes_args.limit)->capture_default_str();
  primes->add_option("--nth", primes_args.nth, "p_n for each n")->delimiter(',');
  primes->add_option("--pi", primes_args.pi, "pi(x) for each x")->delimiter(',');

  Theorem1Args t1;
  auto* theorem1 = app.add_subcommand("theorem1", "window discrepancy scan with i = k = (p_n^2 + 1)/2, J = P(n)");
  theorem1->add_option("--n-lo", t1.n_lo)->capture_default_str();
  theorem1->add_option("--n-hi", t1.n_hi)->capture_default_str();
  theorem1->add_option("--ref", t1.ref, "reference window base1 = [1,i], base0 = [0,i-1]")
      ->check(CLI::IsMember({"base0", "base1"}))
      ->capture_default_str();
  theorem1->add_flag("--study", t1.study, "append the mean D/n^2 against log(2)/4");
  theorem1->add_option("--target", t1.target)->capture_default_str();
  theorem1->add_option("--tolerance", t1.tolerance)->capture_default_str();

  FoldArgs fa;
  auto* fold = app.add_subcommand("fold", "folded coprime count and the selection union identity");
  fold->add_option("--i", fa.i)->capture_default_str();
  fold->add_option("--n", fa.n)->capture_default_str();
  fold->add_option("--r", fa.r)->capture_default_str();

  ShiftArgs sa;
  auto* shift = app.add_subcommand("shift", "shift i_T realizing every selection over [1, j]");
  shift->add_option("--n", sa.n)->capture_default_str();
  shift->add_option("--r", sa.r)->capture_default_str();
  shift->add_option("--j", sa.j)->capture_default_str();

  TwinArgs ta;
  auto* twin = app.add_subcommand("twin", "twin prime pair counts");
  twin->add_option("--limit", ta.limit)->capture_default_str();
  twin->add_option("--correspondence", ta.correspondence, "also compare folded coprimes at p_n^2 for this n");

  GoldbachArgs ga;
  auto* goldbach = app.add_subcommand("goldbach", "even-number representation scan");
  goldbach->add_option("--range", ga.range, "lo hi (even)")->expected(2);
  goldbach->add_option("--targets", ga.targets, "representation counts for these targets")->delimiter(',');

  IdentityArgs ia;
  auto* identities = app.add_subcommand("identities", "totient-style counting identities against brute force");
  identities->add_option("--lemma", ia.lemma)
      ->check(CLI::IsMember({"bn", "bm", "cap", "mab", "bn-sweep", "cap-sweep"}))
      ->capture_default_str();
  identities->add_option("--J", ia.J)->delimiter(',');
  identities->add_option("--s", ia.s);
  identities->add_option("--t", ia.t);
  identities->add_option("--n", ia.n);
  identities->add_option("--V", ia.V)->delimiter(',');
  identities->add_option("--b", ia.b);
  identities->add_option("--S", ia.S)->delimiter(',');
  identities->add_option("--count", ia.count)->capture_default_str();
  identities->add_option("--max-period", ia.max_period)->capture_default_str();

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "explicit-bound quantities");
  bounds->add_option("--which", ba.which)
      ->check(CLI::IsMember({"hi", "pi", "p", "q", "v", "j", "theta", "mertens", "nicolas", "u", "theorem3", "theorem4",
                             "olq", "ratios", "union"}))
      ->capture_default_str();
  bounds->add_option("--x", ba.x);
  bounds->add_option("--n", ba.n);
  bounds->add_option("--k", ba.k);
  bounds->add_option("--r", ba.r);
  bounds->add_option("--j", ba.j);
  bounds->add_option("--c", ba.c);
  bounds->add_option("--z", ba.z);
  bounds->add_option("--s", ba.s);
  bounds->add_option("--i", ba.i);

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "published-constant reproduction and the falsification ledger");
  report->add_option("--set", ra.set, "all, constants or ledger")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  cfg.threads = resolve_threads(cfg.threads);

  ReportEnvelope env;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (primes->parsed()) {
      env.command = "primes";
      run_primes(primes_args, cfg, env);
    } else if (theorem1->parsed()) {
      env.command = "theorem1";
      run_theorem1(t1, cfg, env);
    } else if (fold->parsed()) {
      env.command = "fold";
      run_fold(fa, cfg, env);
    } else if (shift->parsed()) {
      env.command = "shift";
      run_shift(sa, cfg, env);
    } else if (twin->parsed()) {
      env.command = "twin";
      run_twin(ta, cfg, env);
    } else if (goldbach->parsed()) {
      env.command = "goldbach";
      run_goldbach(ga, cfg, env);
    } else if (identities->parsed()) {
      env.command = "identities";
      run_identities(ia, cfg, env);
    } else if (bounds->parsed()) {
      env.command = "bounds";
      run_bounds(ba, cfg, env);
    } else if (report->parsed()) {
      env.command = "report";
      run_report(ra, cfg, env);
    }
  } catch (const domain_error& e) {
    std::cerr << "foldsieve: " << e.what() << '\n';
    return 1;
  } catch (const range_error& e) {
    std::cerr << "foldsieve: " << e.what() << '\n';
    return 1;
  } catch (const capacity_error& e) {
    std::cerr << "foldsieve: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "foldsieve: internal error: " << e.what() << '\n';
    return 3;
  }
  if (cfg.timings) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    env.timings = {{"elapsed_seconds", elapsed.count()}, {"threads", cfg.threads}};
  }

  std::string text;
  if (cfg.format == "csv")
    text = to_csv(env.results, csv_columns.at(env.command));
  else
    text = env.to_json().dump(2) + "\n";

  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "foldsieve: cannot open " << cfg.out << '\n';
      return 3;
    }
    f << text;
  }
  return env.has_finding() ? 2 : 0;
}
