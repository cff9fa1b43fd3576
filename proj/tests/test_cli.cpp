#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lawecse/cli.hpp"
#include "support.hpp"

using nlohmann::json;
using testsupport::data_path;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = lawecse::run_cli(args, in, out, err);
  return CliRun{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("unrooted solve of the worked example") {
  CliRun r = run({"unrooted", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights")});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["mode"] == "unrooted");
  CHECK(j["weight"].get<double>() == doctest::Approx(3.6));
  CHECK(j["mapping"].size() == 2);
  CHECK(j["skipped"].size() == 2);
  CHECK(j["stats"]["matching_solves"].get<int>() > 0);
  CHECK(j.contains("roots"));
}

TEST_CASE("rooted solve with explicit roots") {
  CliRun r = run({"rooted", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights"), "--root1",
                  "r", "--root2", "v"});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["weight"].get<double>() == doctest::Approx(2.8));
  CHECK(j["roots"]["tree1"] == "r");
  CHECK(j["roots"]["tree2"] == "v");
}

TEST_CASE("root-to-root is its own subcommand") {
  CliRun r = run({"root-to-root", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights"), "--root1",
                  "r", "--root2", "v"});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["weight"].get<double>() == doctest::Approx(2.8));
}

TEST_CASE("all-forbidden weights exit with the infeasible code") {
  CliRun r = run({"unrooted", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("forbidden.weights")});
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK(j["weight"] == "-inf");
  CHECK_FALSE(j.contains("mapping"));
}

TEST_CASE("--no-mapping only removes mapping keys") {
  std::vector<std::string> base = {"unrooted", "--tree1", data_path("fig2_t1.tree"),
                                   "--tree2",  data_path("fig2_t2.tree"),
                                   "--weights", data_path("fig2.weights")};
  CliRun with = run(base);
  std::vector<std::string> args = base;
  args.push_back("--no-mapping");
  CliRun without = run(args);
  json jw = json::parse(with.out);
  json jo = json::parse(without.out);
  CHECK(jw["weight"] == jo["weight"]);
  CHECK(jw.contains("mapping"));
  CHECK_FALSE(jo.contains("mapping"));
  CHECK_FALSE(jo.contains("skipped"));
}

TEST_CASE("--min-weight filters low optima") {
  CliRun r = run({"unrooted", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights"),
                  "--min-weight", "10"});
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK_FALSE(j.contains("mapping"));
}

TEST_CASE("oracle subcommand mirrors the solver output") {
  CliRun r = run({"oracle", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                  data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights"), "--mode",
                  "unrooted"});
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["weight"].get<double>() == doctest::Approx(3.6));
}

TEST_CASE("deterministic output") {
  std::vector<std::string> args = {"unrooted", "--tree1", data_path("fig2_t1.tree"),
                                   "--tree2",  data_path("fig2_t2.tree"),
                                   "--weights", data_path("fig2.weights")};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("matching subcommand reads a matrix from stdin") {
  CliRun r = run({"matching"}, testsupport::read_file(data_path("fig3.matrix")));
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["weight"].get<double>() == doctest::Approx(5));
  REQUIRE(j["pairs"].size() == 2);
  CHECK(j["pairs"][0][0] == 0);
  CHECK(j["pairs"][0][1] == 1);
  CHECK(j["pairs"][1][0] == 1);
  CHECK(j["pairs"][1][1] == 2);
}

TEST_CASE("input errors exit with code 1 and a message") {
  CliRun missing = run({"unrooted", "--tree1", data_path("no_such_file.tree"), "--tree2",
                        data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights")});
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("error:") != std::string::npos);

  CliRun bad_root = run({"rooted", "--tree1", data_path("fig2_t1.tree"), "--tree2",
                         data_path("fig2_t2.tree"), "--weights", data_path("fig2.weights"),
                         "--root1", "zzz"});
  CHECK(bad_root.exit_code == 1);
  CHECK(bad_root.err.find("zzz") != std::string::npos);
}

TEST_CASE("bench emits deterministic rows apart from timing") {
  std::vector<std::string> args = {"bench", "--sizes", "1,6", "--trials", "2",
                                   "--seed",  "42",    "--algo",  "opt"};
  CliRun a = run(args);
  CliRun b = run(args);
  REQUIRE(a.exit_code == 0);

  auto strip_timing = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, result;
    while (std::getline(in, line)) {
      // wall_ms is the second-to-last column
      size_t last = line.rfind(',');
      size_t second = line.rfind(',', last - 1);
      result += line.substr(0, second) + line.substr(last) + "\n";
    }
    return result;
  };
  CHECK(strip_timing(a.out) == strip_timing(b.out));
  // header plus 2 sizes x 2 trials
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
}

TEST_CASE("bench algorithms agree on singleton trees") {
  CliRun opt = run({"bench", "--sizes", "1", "--trials", "3", "--seed", "7", "--algo", "opt"});
  CliRun naive =
      run({"bench", "--sizes", "1", "--trials", "3", "--seed", "7", "--algo", "naive"});
  auto weights = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::string> ws;
    while (std::getline(in, line)) {
      size_t start = 0;
      for (int i = 0; i < 5; ++i) start = line.find(',', start) + 1;
      ws.push_back(line.substr(start, line.find(',', start) - start));
    }
    return ws;
  };
  CHECK(weights(opt.out) == weights(naive.out));
}
