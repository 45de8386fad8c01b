#include "foldsieve/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace foldsieve;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(FOLDSIEVE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(VerifyRange, SmallRanges) {
  const auto t = build_prime_table(1000000);
  const auto four = goldbach_verify_range(4, 4, t);
  EXPECT_TRUE(four.passed());
  EXPECT_EQ(four.checked, 1u);
  EXPECT_EQ(four.max_least_prime, 2u);
  const auto full = goldbach_verify_range(4, 1000000, t, 3);
  EXPECT_TRUE(full.passed());
  EXPECT_EQ(full.checked, 499999u);
  const auto single = goldbach_verify_range(4, 1000000, t, 1);
  EXPECT_EQ(single.max_least_prime, full.max_least_prime);
  EXPECT_EQ(single.max_least_prime_at, full.max_least_prime_at);
  EXPECT_THROW(goldbach_verify_range(2, 10, t), domain_error);
  EXPECT_THROW(goldbach_verify_range(4, 11, t), domain_error);
  EXPECT_THROW(goldbach_verify_range(4, 2000000, t), range_error);
}

TEST(VerifyRange, RepresentationCountsAgreeWithNaiveOracle) {
  const auto t = build_prime_table(1000000);
  seeded_rng rng(0);
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t target = 2 * rng.uniform_in(2, 500000);
    std::uint64_t want = 0;
    for (std::uint64_t p = 2; 2 * p <= target; ++p)
      if (naive_prime(p) && naive_prime(target - p)) ++want;
    EXPECT_EQ(goldbach_representations(target, t), want) << target;
    EXPECT_EQ(least_goldbach_prime(target, t) > 0, want > 0);
  }
}

TEST(Report, EnvelopeChecksumCoversResults) {
  ReportEnvelope env;
  env.command = "x";
  env.results.push_back({{"a", 1}, {"status", "match"}});
  const auto before = env.checksum();
  EXPECT_EQ(before, "fnv1a64:" + hex64(fnv1a64(env.results.dump())));
  env.params["k"] = 3;
  env.timings = {{"elapsed_seconds", 1.5}};
  EXPECT_EQ(env.checksum(), before);
  EXPECT_FALSE(env.has_finding());
  env.results.push_back({{"status", "falsification"}});
  EXPECT_NE(env.checksum(), before);
  EXPECT_TRUE(env.has_finding());
  const auto j = env.to_json();
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_TRUE(j.contains("timings"));
}

TEST(Report, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Report, CsvProjection) {
  json rows = json::array();
  rows.push_back({{"a", 1}, {"b", "x,y"}, {"status", "match"}});
  rows.push_back({{"a", 2}, {"status", "mismatch"}});
  EXPECT_EQ(to_csv(rows, {"a", "b", "status"}), "a,b,status\n1,\"x,y\",match\n2,,mismatch\n");
}

TEST(Report, PublishedConstantGates) {
  const auto t = build_prime_table(constants_table_limit);
  const auto gates = published_constant_reports(t);
  ASSERT_EQ(gates.size(), 13u);
  std::vector<std::string> failing;
  for (const auto& g : gates)
    if (g.status != BoundStatus::match) failing.push_back(g.quantity);
  EXPECT_EQ(failing, (std::vector<std::string>{"q", "theta", "j step ratio"}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("bounds --which hi --x 355991").code, 0);
  EXPECT_EQ(cli("identities --lemma bm --J 2,3,5,7 --s 6 --t 2").code, 2);
  EXPECT_EQ(cli("identities --lemma bn --J 2,3,5,7 --s 2").code, 0);
  EXPECT_EQ(cli("bogus").code, 1);
  EXPECT_EQ(cli("identities --lemma bn --J 2,3 --s 3").code, 1);
  EXPECT_EQ(cli("theorem1 --n-lo 2").code, 1);
}

TEST(Cli, HiAndTwinOutputs) {
  const auto hi = json::parse(cli("bounds --which hi --x 355991").out);
  EXPECT_NEAR(hi["results"][0]["value"].get<double>(), 30456.026, 0.001);
  const auto tw = json::parse(cli("twin --limit 1000000").out);
  std::uint64_t naive = 0;
  for (std::uint64_t p = 5; p <= 1000000; p += 2)
    if (naive_prime(p) && naive_prime(p - 2)) ++naive;
  EXPECT_EQ(tw["results"][0]["value"].get<std::uint64_t>(), naive);
}

TEST(Cli, ThreadBudgetDoesNotChangeBytes) {
  for (const std::string args : {"theorem1 --n-lo 4 --n-hi 80 --study", "identities --lemma cap-sweep --count 40",
                                 "shift --n 4 --j 100", "goldbach --range 4 200000"}) {
    const auto a = cli(args + " --threads 1");
    const auto b = cli(args + " --threads 8");
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, CsvFormat) {
  const auto r = cli("identities --lemma mab --n 2 --V 3 --b 5 --S 1,2 --format csv");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "lemma,params,brute,formula,status");
  EXPECT_NE(r.out.find(",7,9/1,mismatch"), std::string::npos);
}
