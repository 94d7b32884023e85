#include "checkerdisc/cli.hpp"
#include "checkerdisc/parallel.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace checkerdisc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "checkerdisc");
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  set_thread_count(1);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("checkerdisc_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  [[nodiscard]] std::string at(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("value formatting") {
    CHECK(format_disc_value(0.0) == "0.000000000000");
    CHECK(format_disc_value(-3e-13) == "0.000000000000");
    CHECK(format_disc_value(6.283185307179586) == "6.28318530718");
    CHECK(format_disc_value(-1.0) == "-1.00000000000");
  }

  TEST_CASE("gen writes the coloring and a sidecar") {
    TempDir dir;
    const Outcome o = run_cli({"gen", "--kind", "chessboard", "--n", "2", "-o", dir.at("board.txt")});
    REQUIRE(o.code == 0);
    CHECK(slurp(dir.at("board.txt")) == "2\n+-\n-+\n");
    const nlohmann::json side = nlohmann::json::parse(slurp(dir.at("board.txt.json")));
    CHECK(side["command"] == "gen");
    CHECK(side.contains("argv"));
    CHECK(side["options"]["kind"] == "chessboard");
  }

  TEST_CASE("disc on generated and loaded colorings") {
    CHECK(run_cli({"disc", "--kind", "chessboard", "--n", "4", "--circle", "1,1,0.5"}).out == "0.000000000000\n");
    CHECK(run_cli({"disc", "--kind", "constant", "--n", "4", "--circle", "2,2,1"}).out == "6.28318530718\n");
    CHECK(run_cli({"disc", "--kind", "constant", "--n", "4", "--circle", "2,2,1", "--window", "0,3.141592653589793"})
              .out == "3.14159265359\n");
    CHECK(run_cli({"disc", "--kind", "chessboard", "--n", "8", "--polygon", "square", "--place", "3,5,1,0"}).out ==
          "1.00000000000\n");

    TempDir dir;
    REQUIRE(run_cli({"gen", "--kind", "random", "--n", "12", "--seed", "4", "-o", dir.at("r.txt")}).code == 0);
    const Outcome a = run_cli({"disc", "--coloring", dir.at("r.txt"), "--disk", "6.1,5.7,3.2"});
    const Outcome b = run_cli({"disc", "--kind", "random", "--n", "12", "--seed", "4", "--disk", "6.1,5.7,3.2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("errors exit nonzero with a message") {
    const Outcome missing = run_cli({"disc", "--coloring", "/nonexistent/file.txt", "--circle", "1,1,1"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error:") != std::string::npos);
    CHECK(run_cli({"disc", "--kind", "constant", "--n", "4"}).code != 0);
    CHECK(run_cli({"frobnicate"}).code != 0);
    CHECK(run_cli({"certify", "--check", "nonsense"}).code != 0);
  }

  TEST_CASE("failed commands leave no output files") {
    TempDir dir;
    CHECK(run_cli({"gen", "--kind", "spiral", "--n", "4", "-o", dir.at("bad.txt")}).code != 0);
    CHECK(run_cli({"field", "--kind", "constant", "--n", "4", "--t", "1", "--range", "3,1", "-o", dir.at("f")}).code !=
          0);
    CHECK(fs::is_empty(dir.path));
  }

  TEST_CASE("field writes CSV, PGM and scaling sidecar") {
    TempDir dir;
    const std::string prefix = dir.at("field");
    REQUIRE(run_cli({"field", "--kind", "random", "--n", "6", "--t", "1", "--step", "0.5", "-o", prefix}).code == 0);
    const std::string csv = slurp(prefix + ".csv");
    CHECK(csv.rfind("x,y,discrepancy\n", 0) == 0);
    const std::string pgm = slurp(prefix + ".pgm");
    REQUIRE(pgm.size() > 2);
    CHECK(pgm.substr(0, 3) == "P5\n");
    CHECK(fs::exists(prefix + ".pgm.json"));
    CHECK(fs::exists(prefix + ".csv.json"));
  }

  TEST_CASE("certify exit codes") {
    const Outcome ok = run_cli({"certify", "--check", "lemma-double", "--rmax", "10"});
    CHECK(ok.code == 0);
    const nlohmann::json j = nlohmann::json::parse(ok.out);
    CHECK(j.dump().find("lemma-double") != std::string::npos);
    // The holes floor is calibrated for n = t; a 16x16 chessboard at t = 2
    // falls below it.
    const Outcome low = run_cli({"certify", "--check", "holes", "--kind", "chessboard", "--n", "16", "--t", "2"});
    CHECK(low.code == 1);
    const nlohmann::json reports = nlohmann::json::parse(low.out);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0]["pass"] == false);
  }

  TEST_CASE("thread count does not change outputs") {
    const std::vector<std::string> base = {"search", "--mode", "arc", "--kind", "random", "--n", "12", "--t", "2"};
    std::vector<std::string> one = base;
    one.insert(one.begin(), {"--threads", "1"});
    std::vector<std::string> four = base;
    four.insert(four.begin(), {"--threads", "4"});
    const Outcome a = run_cli(one);
    const Outcome b = run_cli(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}
