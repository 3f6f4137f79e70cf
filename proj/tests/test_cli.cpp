#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(OPNKIT_CLI) + " " + args + " 2>/dev/null";
  Run result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

bool contains(const std::string& hay, std::string_view needle) { return hay.find(needle) != std::string::npos; }

void check_round_trip(const std::string& out) {
  const auto j = nlohmann::json::parse(out);
  CHECK(j.dump(2) + "\n" == out);
}

}  // namespace

TEST_CASE("bounds") {
  const auto r2 = run("bounds -r 2 --format json");
  REQUIRE(r2.status == 0);
  check_round_trip(r2.out);
  const auto j = nlohmann::json::parse(r2.out);
  CHECK(j["r"] == 2);
  CHECK(j["digits"] == 50);
  CHECK(j["alpha_lb"]["lo"].get<std::string>().rfind("5.8284271247461900976033774484193961571393437507538", 0) == 0);
  CHECK(j["n_ub"]["log2"] == "16");

  const auto r1 = run("bounds -r 1 --format json --digits 5");
  REQUIRE(r1.status == 0);
  const auto j1 = nlohmann::json::parse(r1.out);
  for (const char* key : {"alpha_lb", "beta_lb", "n_lb"}) {
    CHECK(j1[key]["lo"] == "1.0000e+00");
    CHECK(j1[key]["hi"] == "1.0000e+00");
  }

  CHECK(contains(run("bounds -r 9").out, "n_ub = 2^262144"));
  CHECK(run("bounds -r 0").status == 2);
  CHECK(run("bounds").status == 2);
  CHECK(run("bounds -r 2 --format xml").status == 2);
}

TEST_CASE("check") {
  const auto a = run("check '3^2*5*7^2'");
  CHECK(a.status == 1);
  CHECK(contains(a.out, "FAIL min_distinct: r = 3 < 9"));
  CHECK(contains(a.out, "PASS euler_form"));
  CHECK(contains(a.out, "PASS touchard"));
  CHECK(contains(a.out, "overall: Refuted"));

  const auto j = run("check '3^2*5*7^2' --format json");
  CHECK(j.status == 1);
  check_round_trip(j.out);
  CHECK(nlohmann::json::parse(j.out)["overall"] == "Refuted");

  CHECK(run("check '4*7'").status == 2);
  CHECK(run("check '3^2**5'").status == 2);
  const auto even = run("check '2^2*7'");
  CHECK(even.status == 1);
  CHECK(contains(even.out, "FAIL parity"));
}

TEST_CASE("verify") {
  const auto chain = run("verify chain --limit 100000");
  CHECK(chain.status == 0);
  CHECK(contains(chain.out, "violations 0"));
  CHECK(run("verify keyineq --trials 10000 --seed 42").status == 0);
  const auto thm3 = run("verify thm3 --trials 1000 --seed 7 --format json");
  CHECK(thm3.status == 0);
  check_round_trip(thm3.out);
  CHECK(run("verify thm3 --trials 1000 --seed 7 --format json").out == thm3.out);
  CHECK(run("verify gmhm --trials 50").status == 0);
  CHECK(run("verify thm1 --trials 200").status == 0);
  CHECK(run("verify thm2 --trials 200").status == 0);
  CHECK(run("verify thm5").status == 2);
}

TEST_CASE("scan") {
  const auto s = run("scan --lo 2 --hi 10000 --format json");
  CHECK(s.status == 0);
  const auto j = nlohmann::json::parse(s.out);
  std::vector<std::uint64_t> ns;
  for (const auto& v : j["violations"]) ns.push_back(v["n"]);
  CHECK(ns == std::vector<std::uint64_t>{6, 28, 496, 8128});

  const auto odd = run("scan --lo 3 --hi 100000000 --parity odd");
  CHECK(odd.status == 0);
  CHECK(contains(odd.out, "found nothing"));

  CHECK(run("scan --lo 3 --hi 100000 --property radical-chain").status == 0);
  CHECK(run("scan --lo 10 --hi 2").status == 2);
  CHECK(run("scan --lo 0 --hi 2").status == 2);
  CHECK(run("scan --lo 2 --hi 2000000000").status == 2);
  CHECK(run("scan --lo 2 --hi 100 --parity prime").status == 2);
}

TEST_CASE("scan resume through the CLI") {
  const fs::path ck = fs::temp_directory_path() / ("opnkit_cli_" + std::to_string(::getpid()) + ".jsonl");
  fs::remove(ck);
  const std::string base = "scan --lo 2 --hi 50000 --block-size 1000 --jobs 2 --checkpoint " + ck.string();
  CHECK(run(base + " --stop-after-blocks 10").status == 5);
  const auto resumed = run(base + " --format json");
  CHECK(resumed.status == 0);
  const auto fresh = run("scan --lo 2 --hi 50000 --block-size 1000 --format json");
  auto strip = [](std::string text) {
    auto j = nlohmann::json::parse(text);
    j.erase("elapsed_seconds");
    return j.dump();
  };
  CHECK(strip(resumed.out) == strip(fresh.out));
  CHECK(run("scan --lo 2 --hi 60000 --block-size 1000 --checkpoint " + ck.string()).status == 4);
  fs::remove(ck);
  CHECK(run("scan --lo 2 --hi 100 --checkpoint /nonexistent-dir/opnkit/ck.jsonl").status == 4);
}

TEST_CASE("sk") {
  const auto t = run("sk '3*5*7'");
  CHECK(t.status == 0);
  CHECK(contains(t.out, "S_1 = 71/105"));
  CHECK(contains(t.out, "S_2 = 1/7"));
  CHECK(contains(t.out, "S_3 = 1/105"));
  CHECK(contains(run("sk 3").out, "S_1 = 1/3"));

  const auto j = run("sk '3*5*7' --format json");
  CHECK(j.status == 0);
  check_round_trip(j.out);
  const auto doc = nlohmann::json::parse(j.out);
  REQUIRE(doc["sums"].size() == 3);
  CHECK(doc["sums"][0]["k"] == 1);
  CHECK(doc["sums"][0]["numerator"] == "71");
  CHECK(doc["sums"][0]["denominator"] == "105");
  CHECK(doc["identity"]["holds"] == true);
  CHECK(run("sk '3*'").status == 2);
}

TEST_CASE("compare") {
  CHECK(run("compare 15 -r 2").out == "Above\n");
  CHECK(run("compare 5 -r 2").out == "Below\n");
  CHECK(run("compare 5.9 -r 2 --bound beta_lb").out == "Above\n");
  CHECK(run("compare 7/2 -r 1 --bound n_lb").out == "Above\n");
  const auto tie = run("compare 1 -r 1");
  CHECK(tie.status == 3);
  CHECK(tie.out == "Undecided\n");
  CHECK(run("compare 1/0 -r 2").status == 2);
  CHECK(run("compare 3 -r 2 --bound gamma").status == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("--help").status == 0);
}
