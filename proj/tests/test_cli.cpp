#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "invgen/algebra.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* bin = std::getenv("INVGEN_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

std::string golden_path(const std::string& name) {
  const char* dir = std::getenv("INVGEN_GOLDEN_DIR");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("dims prints the headline numbers") {
  auto r = run_cli("dims --n 2 --r 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("dim Z_r = 7") != std::string::npos);
  CHECK(r.out.find("dim Ybar = 6") != std::string::npos);
  CHECK(r.out.find("dim Y'bar = 4") != std::string::npos);
}

TEST_CASE("dims json output matches the golden schema exactly") {
  std::string tmp = "cli_dims_out.json";
  auto r = run_cli("dims --n 2 --r 1 --json " + tmp);
  CHECK(r.code == 0);
  json doc = read_json_file(tmp);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("kind") == "dims-report");
  CHECK(doc.at("result") == read_json_file(golden_path("dims_n2r1.json")));
  const json& man = doc.at("manifest");
  for (const char* key :
       {"tool", "version", "subcommand", "parameters", "started", "finished", "output_digest"})
    CHECK(man.contains(key));
  CHECK(man.at("subcommand") == "dims");
  CHECK(man.at("output_digest").get<std::string>().rfind("fnv1a:", 0) == 0);
  std::remove(tmp.c_str());
}

TEST_CASE("identity suite runs clean for n = 4") {
  auto r = run_cli("identities --n 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("0 failures") != std::string::npos);
}

TEST_CASE("tiny census via the CLI") {
  std::string tmp = "cli_census_out.json";
  auto r = run_cli("census --n 1 --r 2 --q 3 --mode exhaustive --json " + tmp);
  CHECK(r.code == 0);
  json doc = read_json_file(tmp);
  CHECK(doc.at("result").at("nongenerating") == 9);
  CHECK(doc.at("result").at("total") == 81);
  std::remove(tmp.c_str());
}

TEST_CASE("census checkpoint file via the CLI") {
  std::remove("cli_ckpt.json");
  auto r1 = run_cli("census --n 2 --r 1 --q 3 --checkpoint cli_ckpt.json --json cli_ck_a.json");
  CHECK(r1.code == 0);
  json ck = read_json_file("cli_ckpt.json");
  CHECK(ck.at("kind") == "census-checkpoint");
  CHECK(ck.at("tally").at("done") == 6561);
  // Re-running with the finished checkpoint reproduces the same digest.
  auto r2 = run_cli("census --n 2 --r 1 --q 3 --checkpoint cli_ckpt.json --json cli_ck_b.json");
  CHECK(r2.code == 0);
  CHECK(read_json_file("cli_ck_a.json").at("manifest").at("output_digest") ==
        read_json_file("cli_ck_b.json").at("manifest").at("output_digest"));
  std::remove("cli_ckpt.json");
  std::remove("cli_ck_a.json");
  std::remove("cli_ck_b.json");
}

TEST_CASE("census digests are reproducible across runs and worker counts") {
  std::string t1 = "cli_census_d1.json", t2 = "cli_census_d2.json";
  auto r1 = run_cli("census --n 2 --r 1 --q 3 --workers 1 --json " + t1);
  auto r2 = run_cli("census --n 2 --r 1 --q 3 --workers 2 --json " + t2);
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  json d1 = read_json_file(t1), d2 = read_json_file(t2);
  CHECK(d1.at("manifest").at("output_digest") == d2.at("manifest").at("output_digest"));
  std::remove(t1.c_str());
  std::remove(t2.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("dims --n 2 --r 1 --definitely-not-a-flag").code == 2);
  CHECK(run_cli("no-such-subcommand").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("algebra validation and fingerprints") {
  json doc;
  doc["dim"] = 2;
  doc["field"] = "F5";
  doc["product"] = json::array({json::array({0, 0, 0, 1}), json::array({1, 1, 1, 1})});
  doc["involution"] = json::array({0, 1, 1, 0});
  doc["unit"] = json::array({1, 1});
  {
    std::ofstream out("cli_algebra.json");
    out << doc.dump();
  }
  auto r = run_cli("validate-algebra --file cli_algebra.json");
  CHECK(r.code == 0);
  std::string expect = invgen::algebra_fingerprint(doc);
  CHECK(r.out.find(expect) != std::string::npos);

  doc["unit"] = json::array({1, 0});
  {
    std::ofstream out("cli_algebra_bad.json");
    out << doc.dump();
  }
  auto bad = run_cli("validate-algebra --file cli_algebra_bad.json", true);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("unit") != std::string::npos);
  std::remove("cli_algebra.json");
  std::remove("cli_algebra_bad.json");
}

TEST_CASE("classify subcommand") {
  json tup;
  tup["n"] = 2;
  tup["field"] = "F3";
  tup["pairs"] = json::array({json{{"a", json::array({1, 0, 0, 0})},
                                   {"b", json::array({1, 0, 0, 0})}}});
  {
    std::ofstream out("cli_tuple.json");
    out << tup.dump();
  }
  std::string tmp = "cli_classify_out.json";
  auto r = run_cli("classify --tuple cli_tuple.json --all-witnesses --json " + tmp);
  CHECK(r.code == 0);
  json doc = read_json_file(tmp);
  CHECK(doc.at("result").at("generates") == false);
  CHECK(doc.at("result").at("invariant_subspaces").size() == 1);
  CHECK_FALSE(doc.at("result").at("conjugator_symmetric").is_null());
  std::remove("cli_tuple.json");
  std::remove(tmp.c_str());

  // Limiting the extension depth makes the companion pair inconclusive:
  // runtime failure (exit 1), not a usage error.
  json tup2;
  tup2["n"] = 2;
  tup2["field"] = "F2";
  tup2["pairs"] = json::array({json{{"a", json::array({0, 1, 1, 1})},
                                    {"b", json::array({1, 0, 0, 1})}}});
  {
    std::ofstream out("cli_tuple2.json");
    out << tup2.dump();
  }
  auto limited = run_cli("classify --tuple cli_tuple2.json --max-ext 1", true);
  CHECK(limited.code == 1);
  CHECK(limited.out.find("inconclusive") != std::string::npos);
  auto fine = run_cli("classify --tuple cli_tuple2.json");
  CHECK(fine.code == 0);
  std::remove("cli_tuple2.json");
}

TEST_CASE("bounds subcommand with table output") {
  auto r = run_cli("bounds --n 2 --d 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("= 3") != std::string::npos);

  auto n1 = run_cli("bounds --n 1 --d 3");
  CHECK(n1.code == 0);
  CHECK(n1.out.find("r = 4") != std::string::npos);

  auto t = run_cli("bounds --n 2 --d 0 --table 5 10 --csv cli_bounds.csv");
  CHECK(t.code == 0);
  std::ifstream csv("cli_bounds.csv");
  REQUIRE(csv.good());
  std::string line;
  int lines = 0;
  std::getline(csv, line);
  CHECK(line == "n,d,upper,lower_examples,noetherian");
  while (std::getline(csv, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 4 * 11);  // n in [2,5], d in [0,10]
  std::remove("cli_bounds.csv");
}

TEST_CASE("generator verification subcommand") {
  auto r = run_cli("verify-generators --n 2 --field F5");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("hermitian") != std::string::npos);

  // Tiny fields lack a scalar outside {0, 1, -1}; the stabilizer-generator
  // check escalates to the quadratic extension and says so.
  auto esc = run_cli("verify-generators --n 2 --field F2");
  CHECK(esc.code == 0);
  CHECK(esc.out.find("escalated") != std::string::npos);
  CHECK(esc.out.find("F2^2") != std::string::npos);

  auto b = run_cli("verify-generators --n 2 --brute bomega --q 3 --r 2");
  CHECK(b.code == 0);
  CHECK(b.out.find("minimal r 2") != std::string::npos);
}

TEST_CASE("derivations subcommand") {
  auto r = run_cli("derivations --n 2 --field Q");
  CHECK(r.code == 0);
  CHECK(r.out.find("dim Der = 3") != std::string::npos);
  CHECK(r.out.find("match") != std::string::npos);
}
