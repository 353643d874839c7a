#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "avlab/cli.hpp"

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = avlab::cli::run(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<std::string> file_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("cli: structural commands print their plain forms") {
  auto r = run_cli({"standardize", "1635/24"});
  CHECK(r.code == 0);
  CHECK(r.out == "1356/24\n");
  CHECK(r.err.empty());

  CHECK(run_cli({"contains", "136/4/5/27", "14/23"}).out == "true\n");
  CHECK(run_cli({"contains", "136/4/5/27", "1/234"}).out == "false\n");
  CHECK(run_cli({"contains-tuple", "12|21", "12|21"}).out == "true\n");
  CHECK(run_cli({"contains-tuple", "21|12", "12|21"}).out == "false\n");
  CHECK(run_cli({"contains-hg", "1,2,3", "1,2"}).out == "true\n");
  CHECK(run_cli({"contains-hg", "1,2", "1;2"}).out == "false\n");
}

TEST_CASE("cli: permutability with and without a witness") {
  CHECK(run_cli({"permutability", "1356/24"}).out == "3\n");
  CHECK(run_cli({"permutability", "1356/24", "--witness"}).out ==
        "3\nwitness=1-2|3-4|5|6\n");
  CHECK(run_cli({"permutability", "14/23", "--witness"}).out ==
        "1\nwitness=1-2|3-4\n");
  CHECK(run_cli({"pm-dist", "--n", "4"}).out == "0 1\n1 8\n2 5\n3 1\n");
  CHECK(run_cli({"--csv", "pm-dist", "--n", "4"}).out ==
        "pm,count\n0,1\n1,8\n2,5\n3,1\n");
}

TEST_CASE("cli: counting commands") {
  CHECK(run_cli({"count", "--pattern", "123", "--n", "6"}).out == "76\n");
  CHECK(run_cli({"count", "--pattern", "123", "--n", "8", "--no-singletons"}).out ==
        "105\n");
  CHECK(run_cli({"seq", "--pattern", "1/2/3", "--nmax", "5"}).out ==
        "1 1\n2 2\n3 4\n4 8\n5 16\n");
  CHECK(run_cli({"--csv", "seq", "--pattern", "1/2/3", "--nmax", "5"}).out ==
        "n,value\n1,1\n2,2\n3,4\n4,8\n5,16\n");
  CHECK(run_cli({"count-tuples", "--pattern", "12|21", "--n", "3"}).out == "17\n");
  CHECK(run_cli({"count-tuples", "--pattern", "12|12", "--n", "4"}).out == "151\n");
}

TEST_CASE("cli: antichain-prob prints a deterministic seeded estimate") {
  auto r = run_cli({"antichain-prob", "--d", "2", "--n", "1", "--samples", "500"});
  CHECK(r.code == 0);
  CHECK(r.out == "estimate=1.000000 se=0.000000 samples=500 seed=7\n");
  auto seeded = run_cli(
      {"antichain-prob", "--d", "2", "--n", "3", "--samples", "4096", "--seed", "11"});
  CHECK(seeded.code == 0);
  CHECK(seeded.out.find(" samples=4096 seed=11\n") != std::string::npos);
  CHECK(seeded.out ==
        run_cli({"antichain-prob", "--d", "2", "--n", "3", "--samples", "4096",
                 "--seed", "11"})
            .out);
}

TEST_CASE("cli: hypergraph commands") {
  CHECK(run_cli({"contract", "--hg", "1,4;2,5,6;3", "--s", "2"}).out ==
        "1;1,2\n1 x1\n1,2 x2\n");
  CHECK(run_cli({"project", "--hg", "1,3,5;2,4,6", "--drop", "2"}).out ==
        "1,5;2,6\n");
  const auto mw = run_cli({"max-weight", "--hg", "1,3;2,4", "--n", "3", "--budget",
                           "100000"});
  CHECK(mw.code == 0);
  CHECK(mw.out.find("weight=12\n") == 0);
  CHECK(mw.out.find("\nexact=true\n") != std::string::npos);
  CHECK(mw.out.find("\nbest=") != std::string::npos);
}

TEST_CASE("cli: certify-lower and classify") {
  CHECK(run_cli({"certify-lower", "--pattern", "123", "--n", "8"}).out ==
        "d=2 m=4 certified=24 verified=24 exhaustive=true stripped=false\n");
  CHECK(run_cli({"classify", "--basis", "123"}).out == "superexp(2)\n");
  CHECK(run_cli({"classify", "--basis", ""}).out == "bell\n");
  CHECK(run_cli({"classify", "--basis", "123;12"}).out == "exponential\n");
}

TEST_CASE("cli: growth-fit prints the per-n exponents and the hint") {
  const auto r = run_cli({"growth-fit", "--pattern", "123", "--nmax", "11"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "2 1.0000\n3 0.6309\n4 0.6610\n5 0.5937\n6 0.5986\n7 0.5735\n8 0.5731\n"
        "9 0.5609\n10 0.5592\n11 0.5522\n"
        "final=0.5522\nextrapolated=0.3827\nd_hint=2\n");
  const auto csv = run_cli({"--csv", "growth-fit", "--pattern", "123", "--nmax", "11"});
  CHECK(csv.out.rfind("n,alpha\n2,1.0000\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 11);
}

TEST_CASE("cli: exit codes discriminate failure modes") {
  auto parse = run_cli({"count", "--pattern", "136/5/27", "--n", "5"});
  CHECK(parse.code == 2);
  CHECK(parse.out.empty());
  CHECK(parse.err.rfind("error: ", 0) == 0);

  auto limit = run_cli({"count", "--pattern", "123", "--n", "14"});
  CHECK(limit.code == 3);
  CHECK(limit.err.rfind("resource limit: ", 0) == 0);

  CHECK(run_cli({"count", "--pattern", "123"}).code == 2);          // missing --n
  CHECK(run_cli({"bogus"}).code == 2);                              // no such command
  CHECK(run_cli({"count", "--pattern", "123", "--n", "4", "--nope"}).code == 2);
  CHECK(run_cli({}).code == 2);                                     // subcommand required
  CHECK(run_cli({"project", "--hg", "1,2;3", "--drop", "1"}).code == 2);
  CHECK(run_cli({"--threads", "0", "count", "--pattern", "12", "--n", "3"}).code == 2);
  CHECK(run_cli({"antichain-prob", "--d", "2", "--n", "2", "--samples", "0"}).code == 2);
  CHECK(run_cli({"antichain-prob", "--d", "2", "--n", "2", "--samples", "-5"}).code ==
        2);

  auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("avoidance-lab") != std::string::npos);
}

TEST_CASE("cli: csv is rejected where it has no shape") {
  auto r = run_cli({"--csv", "standardize", "123"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(run_cli({"--json", "--csv", "seq", "--pattern", "12", "--nmax", "3"}).code ==
        2);
}

TEST_CASE("cli: json envelope is one alphabetical line") {
  const auto r = run_cli({"--json", "count", "--pattern", "123", "--n", "6"});
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
  CHECK(r.out.rfind(R"({"command":"count","elapsed_ms":)", 0) == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "count");
  CHECK(j["inputs"]["pattern"] == "123");
  CHECK(j["inputs"]["n"] == 6);
  CHECK(j["inputs"]["no_singletons"] == false);
  CHECK_FALSE(j["inputs"].contains("threads"));
  CHECK_FALSE(j["inputs"].contains("cache_dir"));
  CHECK_FALSE(j["inputs"].contains("seed"));
  CHECK(j["result"]["value"] == "76");
  CHECK(j["elapsed_ms"].is_number());
}

TEST_CASE("cli: json results are independent of the thread count") {
  const std::vector<std::vector<std::string>> corpus{
      {"count", "--pattern", "13/24", "--n", "9"},
      {"count-tuples", "--pattern", "12|21", "--n", "5"},
      {"antichain-prob", "--d", "2", "--n", "4", "--samples", "9999", "--seed", "5"},
  };
  for (const auto& base : corpus) {
    auto one = base;
    one.insert(one.begin(), {"--json", "--threads", "1"});
    auto four = base;
    four.insert(four.begin(), {"--json", "--threads", "4"});
    const auto r1 = run_cli(one);
    const auto r4 = run_cli(four);
    REQUIRE(r1.code == 0);
    REQUIRE(r4.code == 0);
    const auto j1 = nlohmann::json::parse(r1.out);
    const auto j4 = nlohmann::json::parse(r4.out);
    CHECK(j1["result"] == j4["result"]);
    CHECK(j1["inputs"] == j4["inputs"]);
  }
}

TEST_CASE("cli: plain output is bit-identical across thread counts") {
  const std::vector<std::vector<std::string>> corpus{
      {"count", "--pattern", "13/24", "--n", "9"},
      {"count", "--pattern", "123", "--n", "10", "--no-singletons"},
      {"count-tuples", "--pattern", "12|12", "--n", "5"},
      {"antichain-prob", "--d", "3", "--n", "3", "--samples", "9999", "--seed", "2"},
  };
  for (const auto& base : corpus) {
    auto one = base;
    one.insert(one.begin(), {"--threads", "1"});
    auto four = base;
    four.insert(four.begin(), {"--threads", "4"});
    const auto r1 = run_cli(one);
    const auto r4 = run_cli(four);
    REQUIRE(r1.code == 0);
    REQUIRE(r4.code == 0);
    CHECK(r1.out == r4.out);
  }
}

TEST_CASE("cli: the count cache is written, keyed, and consulted") {
  const auto dir = fresh_dir("avlab_cli_cache");
  const std::string flag = dir.string();
  auto first = run_cli({"--cache-dir", flag, "count", "--pattern", "14/23", "--n", "7"});
  CHECK(first.code == 0);
  CHECK(first.out == "374\n");
  auto again = run_cli({"--cache-dir", flag, "count", "--pattern", "14/23", "--n", "7"});
  CHECK(again.out == "374\n");
  const auto lines = file_lines(dir / "counts.jsonl");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] ==
        R"({"engine_version":"1","kind":"partition_avoiders","n":7,"pattern":"14/23","value":"374"})");

  auto tuples =
      run_cli({"--cache-dir", flag, "count-tuples", "--pattern", "12|21", "--n", "4"});
  CHECK(tuples.out == "151\n");
  const auto lines2 = file_lines(dir / "counts.jsonl");
  REQUIRE(lines2.size() == 2);
  CHECK(lines2[1] ==
        R"({"engine_version":"1","kind":"tuple_avoiders","n":4,"pattern":"12|21","value":"151"})");
  CHECK(run_cli({"--cache-dir", flag, "count-tuples", "--pattern", "12|21", "--n", "4"})
            .out == "151\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: a poisoned cache value is returned verbatim") {
  const auto dir = fresh_dir("avlab_cli_cache_poison");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "counts.jsonl")
      << R"({"engine_version":"1","kind":"partition_avoiders","n":4,"pattern":"123","value":"999"})"
      << "\n";
  CHECK(run_cli({"--cache-dir", dir.string(), "count", "--pattern", "123", "--n", "4"})
            .out == "999\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: the cache directory falls back to the environment") {
  const auto dir = fresh_dir("avlab_cli_cache_env");
  setenv("AVOIDANCE_LAB_CACHE", dir.string().c_str(), 1);
  CHECK(run_cli({"count", "--pattern", "1/23", "--n", "6"}).out == "16\n");
  unsetenv("AVOIDANCE_LAB_CACHE");
  const auto lines = file_lines(dir / "counts.jsonl");
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].find("\"pattern\":\"1/23\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}
