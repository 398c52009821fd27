#include "doctest.h"

#include "frobfix/commands.hpp"
#include "frobfix/io.hpp"

#include <cstdlib>
#include <sstream>

using namespace frobfix;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "frobfix");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("ktable golden check") {
  auto r = run({"ktable", "--p", "3", "--n-max", "6", "--check"});
  CHECK(r.code == 0);
  auto j = io::Json::parse(r.out);
  CHECK(j["check"]["passed"] == true);
  CHECK(j["degrees"].size() == 9);
  CHECK(j["degrees"][7]["resolved"] == "Z/26");
}

TEST_CASE("usage errors") {
  CHECK(run({"ktable", "--p", "4"}).code == 2);
  CHECK(run({"pitable", "--p", "2"}).code == 2);
  CHECK(run({"ktable"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"--format", "xml", "ktable", "--p", "3"}).code == 2);
  CHECK(run({"weight1", "--curve", "nosuch"}).code == 2);
  CHECK(run({"weight1", "--curve", "P1"}).code == 2);
}

TEST_CASE("json output is deterministic") {
  auto a = run({"ktable", "--p", "2", "--format", "json"});
  auto b = run({"ktable", "--p", "2", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run({"thh", "--p", "2", "--d", "1", "--n", "2", "--D", "3"});
  auto d = run({"thh", "--p", "2", "--d", "1", "--n", "2", "--D", "3"});
  CHECK(c.out == d.out);
  auto j = io::Json::parse(c.out)["report"];
  CHECK(j["ker_dim"] == 4);
  CHECK(j["coker_certified"] == true);
}

TEST_CASE("pitable markdown mirrors rows and columns") {
  auto r = run({"--format", "markdown", "pitable", "--p", "7", "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("| r \\ n | -1 | 0 | 1 | 2 |") == 0);
  CHECK(r.out.find("| 0 | Z/6 |") != std::string::npos);
}

TEST_CASE("weight1 and versch reports") {
  auto w = run({"weight1", "--curve", "e3a", "--levels", "1,2,3", "--invert-p"});
  CHECK(w.code == 0);
  auto j = io::Json::parse(w.out)["report"];
  CHECK(j["stabilization_level"] == 1);
  CHECK(j["passed"] == true);

  auto v = run({"versch", "--p", "5"});
  CHECK(v.code == 0);
  CHECK(io::Json::parse(v.out)["curves"].size() == 3);
}

TEST_CASE("resource ceiling exit code and override") {
  CHECK(run({"--ceiling", "100", "weight1", "--curve", "e5a", "--levels", "1,2,3"}).code == 3);
  setenv(cli::kCeilingEnv, "100", 1);
  CHECK(run({"weight1", "--curve", "e5a", "--levels", "1,2,3"}).code == 3);
  // the flag wins over the environment
  CHECK(run({"--ceiling", "100000", "weight1", "--curve", "e5a", "--levels", "1,2,3", "--invert-p"}).code == 0);
  unsetenv(cli::kCeilingEnv);
}

TEST_CASE("corpus parsing") {
  auto curves = io::load_corpus(FROBFIX_DATA_DIR "/curves.json");
  CHECK(curves.size() >= 10);
  std::set<std::uint32_t> primes;
  for (const auto& c : curves) primes.insert(c.p);
  CHECK(primes == std::set<std::uint32_t>{2, 3, 5, 7});

  CHECK_THROWS_AS(io::parse_corpus("{"), std::runtime_error);
  CHECK_THROWS_AS(io::parse_corpus(R"({"curves": [{"name": "x"}]})"), std::runtime_error);
  // singular: y^2 = x^3 over F_5
  CHECK_THROWS_AS(io::parse_corpus(R"({"curves": [{"name": "s", "p": 5}]})"), std::runtime_error);
  auto one = io::parse_corpus(R"({"curves": [{"name": "t", "p": 5, "a4": 1, "a6": 1}]})");
  REQUIRE(one.size() == 1);
  CHECK(one[0].a[3] == 1);
}

TEST_CASE("json helpers") {
  CHECK(io::integer(Integer(5)) == 5);
  CHECK(io::integer(ipow(Integer(10), 30)) == "1000000000000000000000000000000");
  FgAbGroup g(1, {Integer(2), Integer(4)});
  auto j = io::to_json(g);
  CHECK(j.dump() == R"({"free_rank":1,"invariant_factors":[2,4]})");
  auto h = io::to_json(GroupHom::identity(FgAbGroup::cyclic(3).presentation()));
  CHECK(h["matrix"].dump() == "[[1]]");
}
