#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "scenarios.hpp"

using toral::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

void check_round_trip(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.dump(2) + "\n" == text);
}

}  // namespace

TEST_CASE("decide-mixing") {
  Result r = call({"decide-mixing", "[[2,1],[1,1]]"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Mixing") != std::string::npos);
  Result j = call({"decide-mixing", "[[1,1],[0,1]]", "--json"});
  CHECK(j.code == 0);
  check_round_trip(j.out);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["verdict"]["answer"] == "NotMixing");
  CHECK(parsed["oracle"]["passed"] == true);
  CHECK(call({"decide-mixing", "[[n, n - 1], [1, 1]]"}).code == 0);
  CHECK(call({"decide-mixing", "[[0,-1],[1,0]]^(n^2 + 1)"}).code == 0);
  CHECK(call({"decide-mixing", "[[2,1],[1,1]]^(n^2)"}).code == 0);
}

TEST_CASE("usage and module errors exit 2") {
  Result bad = call({"decide-mixing", "[[2,1],[1,2]]"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("NonUnimodular") != std::string::npos);
  Result parse = call({"decide-mixing", "[[2n,1],[1,1]]"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("ParseError") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({"decide-joint", "--powers", "1,x", "[[n,1],[n-1,1]]"}).code == 2);
  CHECK(call({"witness-triple", "[[2,1],[1,1]]", "[[1,1],[1,2]]"}).code == 2);
  Result np = call({"scan-conjecture", "--T", "[[1,0],[1,1]]", "--S", "[[2,1],[1,1]]", "--rect", "0 1/3 0 1 @ 2"});
  CHECK(np.code == 2);
  CHECK(np.err.find("ResolutionMismatch") != std::string::npos);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("decide-joint variants") {
  CHECK(call({"decide-joint", "[[2,1],[1,1]]", "[[1,1],[1,2]]"}).code == 0);
  Result t = call({"decide-joint", "[[2,1],[1,1]]", "[[1,1],[1,2]]", "[[3,1],[-1,0]]", "--json"});
  CHECK(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["verdict"]["answer"] == "NotJointlyMixing");
  Result p = call({"decide-joint", "[[n, n^2 - 1], [1, n]]", "--powers", "1,2", "--check-n", "1000", "--json"});
  CHECK(p.code == 0);
  auto pj = nlohmann::json::parse(p.out);
  CHECK(pj["verdict"]["witness"] == nlohmann::json::parse("[[-2,0],[0,1],[0,-1]]"));
  CHECK(pj["oracle"]["checked_to"] == 1000);
  CHECK(call({"decide-joint", "--commuting", "[[2,1],[1,1]]", "[[5,3],[3,2]]"}).code == 0);
  CHECK(call({"decide-joint", "--commuting", "[[2,1],[1,1]]", "[[1,1],[1,2]]"}).code == 2);
}

TEST_CASE("other subcommands") {
  CHECK(call({"classify", "[[2,1],[1,1]]"}).code == 0);
  CHECK(call({"decide-relative", "--U", "[[1,1],[0,1]]", "--a", "n", "--U", "[[1,1],[0,1]]", "--a", "n+1"}).code ==
        0);
  CHECK(call({"rokhlin-check", "--T", "[[2,1],[1,1]]", "--a", "n", "--T", "[[2,1],[1,1]]", "--a", "n^2"}).code == 0);
  CHECK(call({"rokhlin-check", "--family", "[[n, n^2 - 1], [1, n]]", "--a", "1", "--a", "2", "--n", "2..10"}).code ==
        0);
  CHECK(call({"witness-triple", "[[2,1],[1,1]]", "[[1,1],[1,2]]", "[[3,-1],[1,0]]"}).code == 0);
  Result c = call({"correlate", "--f", "1 0 1", "--T", "[[2,1],[1,1]]", "--g", "-5 -3 1", "--n", "1..3", "--json"});
  CHECK(c.code == 0);
  auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["rows"][1]["re"] == "1");
  CHECK(call({"estimate", "--set", "0 1/2 0 1/2 @ 2", "--set", "0 1/2 0 1/2 @ 2", "--M", "[[2,1],[1,1]]", "--Q",
              "256"})
            .code == 0);
  CHECK(call({"estimate", "--set", R"({"q":2,"cells":[[0,0]]})", "--Q", "64"}).code == 0);
  CHECK(call({"krengel", "--f", "1 0 1; 0 1 1", "--T", "[[2,1],[1,1]]"}).code == 0);
  Result z = call({"krengel", "--f", "0 0 1", "--T", "[[2,1],[1,1]]"});
  CHECK(z.code == 2);
  CHECK(z.err.find("ZeroFrequencyPresent") != std::string::npos);
  CHECK(call({"find-unipotent", "--gen", "[[2,1],[1,1]]", "--gen", "[[1,1],[1,2]]", "--L", "4"}).code == 0);
}

TEST_CASE("scan-conjecture writes versioned CSV") {
  std::string path = "scan_test_output.csv";
  Result r = call({"scan-conjecture", "--T", "[[1,0],[1,1]]", "--S", "[[2,1],[1,1]]", "--rect", "0 1/2 0 1/2 @ 2",
                   "--Q", "512", "--n", "1..3", "--csv", path});
  CHECK(r.code == 0);
  std::ifstream f(path);
  std::string header, cols;
  std::getline(f, header);
  std::getline(f, cols);
  CHECK(header == "# toral-scan-csv v1");
  CHECK(cols == "n,estimate,error_bound");
  std::remove(path.c_str());
  Result j = call({"scan-conjecture", "--T", "[[1,0],[1,1]]", "--S", "[[2,1],[1,1]]", "--rect", "0 1/2 0 1/2 @ 2",
                   "--Q", "512", "--n", "1..3", "--json"});
  check_round_trip(j.out);
}

TEST_CASE("bundled scenarios all pass") {
  Result r = call({"scenarios", "--json"});
  CHECK(r.code == 0);
  check_round_trip(r.out);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& s : j["scenarios"]) {
    INFO(s["name"].get<std::string>());
    CHECK(s["passed"] == true);
  }
  Result joint = call({"scenarios", "--filter", "joint"});
  CHECK(joint.code == 0);
  for (const char* name : {"conjugate-triple", "power-remark-quadratic", "power-remark-cubic",
                           "bounded-eigenvalue-family"})
    CHECK(joint.out.find(name) != std::string::npos);
  CHECK(call({"scenarios", "--filter", "nothing-matches-this"}).code == 2);
  CHECK(call({"scenarios", "--list"}).code == 0);
}
