#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pedigree/cli.hpp"
#include "pedigree/pedigree.hpp"

using namespace pedigree;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kA = "n:10;idx:1,2,4,2,6,8,8";
const std::string kB = "n:10;idx:3,1,3,5,7,8,3";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("graph of the example pair") {
    Result r = run({"graph", "--a", kA, "--b", kB});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["vertices"] == nlohmann::json({4, 5, 7, 8, 9, 10}));
    CHECK(j["connected"] == true);
    CHECK(run({"graph", "--a", kA, "--b", kB, "--format", "dot"}).out.find("graph") != std::string::npos);
  }

  TEST_CASE("adjacency and its errors") {
    Result r = run({"adjacent", "--a", kA, "--b", kB});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["adjacent"] == true);
    Result same = run({"adjacent", "--a", kA, "--b", kA});
    CHECK(same.code == kExitDomain);
    CHECK(same.err.find("identical pedigree") != std::string::npos);
    CHECK(run({"adjacent", "--a", kA, "--b", "n:5;idx:1,2"}).code == kExitDomain);
    CHECK(run({"adjacent", "--a", "n:5;idx:9,9", "--b", kB}).code == kExitDomain);
  }

  TEST_CASE("flag and output errors") {
    CHECK(run({"graph", "--a", kA, "--b", kB, "--colour", "red"}).code == kExitDomain);
    CHECK(run({"frobnicate"}).code == kExitDomain);
    CHECK(run({"graph", "--a", kA}).code == kExitDomain);
    CHECK(run({"graph", "--a", kA, "--b", kB, "--out", "/nonexistent/dir/g.json"}).code == kExitIo);
    CHECK(run({"simulate", "--config", "/nonexistent/cfg.txt"}).code == kExitIo);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("--out writes the file") {
    auto path = std::filesystem::temp_directory_path() / "ped_cli_graph.json";
    REQUIRE(run({"graph", "--a", kA, "--b", kB, "--out", path.string()}).code == kExitOk);
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    CHECK(j["n"] == 10);
    std::filesystem::remove(path);
  }

  TEST_CASE("simulate CSV and config file") {
    Result r = run({"simulate", "--alice", "random", "--n", "30", "--samples", "50", "--seed", "7"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("strategy,n,samples,connected_freq,mean_Y,max_degree_seen,mean_T,p2_components\n", 0) == 0);
    CHECK(r.out.find("\nrandom,30,50,") != std::string::npos);

    auto path = std::filesystem::temp_directory_path() / "ped_cli_cfg.txt";
    {
      std::ofstream cfg(path);
      cfg << "strategy = random\nn_targets = 30\nsamples = 50\nseed = 7\n";
    }
    Result from_file = run({"simulate", "--config", path.string(), "--workers", "3"});
    CHECK(from_file.out == r.out);
    std::filesystem::remove(path);
    CHECK(run({"simulate", "--alice", "clever", "--n", "30"}).code == kExitDomain);
  }

  TEST_CASE("verify-transitions") {
    Result r = run({"verify-transitions", "--a", "n:4;idx:1", "--b", "n:4;idx:3", "--move", "2-4"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["alice_edge"] == "2-4");
    Result sweep = run({"verify-transitions", "--samples", "200", "--n-max", "20", "--seed", "4"});
    CHECK(sweep.code == kExitOk);
    CHECK(nlohmann::json::parse(sweep.out)["strict_violations"] == 0);
    CHECK(run({"verify-transitions", "--a", "n:4;idx:1", "--b", "n:4;idx:3", "--move", "1-2"}).code ==
          kExitDomain);
  }

  TEST_CASE("emitted pedigrees are accepted back") {
    for (const char* form : {"idx", "nu"}) {
      Result r = run({"enumerate", "--n", "6", "--form", form});
      REQUIRE(r.code == kExitOk);
      std::istringstream lines(r.out);
      std::string line;
      int count = 0;
      while (std::getline(lines, line)) {
        ++count;
        CHECK_NOTHROW(parse_pedigree(line));
        if (count % 7 == 0)
          CHECK(run({"graph", "--a", line, "--b", "n:6;idx:1,1,1"}).code == kExitOk);
      }
      CHECK(count == 60);
    }
    Result s = run({"sample", "--n", "50", "--count", "3", "--seed", "2"});
    CHECK(s.code == kExitOk);
    CHECK(s.out == run({"sample", "--n", "50", "--count", "3", "--seed", "2"}).out);
  }

  TEST_CASE("census, polytope, example and schema") {
    Result c = run({"census", "--n", "5"});
    REQUIRE(c.code == kExitOk);
    CHECK(nlohmann::json::parse(c.out)["vertices"] == 12);
    CHECK(run({"census", "--n", "9"}).code == kExitDomain);
    Result p = run({"verify-polytope", "--n", "5"});
    REQUIRE(p.code == kExitOk);
    CHECK(nlohmann::json::parse(p.out)["disagreements"] == 0);
    Result e = run({"example"});
    CHECK(e.code == kExitOk);
    CHECK(e.out.find("8 is isolated at time 8") != std::string::npos);
    CHECK(nlohmann::json::parse(run({"example", "--format", "json"}).out).contains("rounds"));
    Result sc = run({"schema"});
    CHECK(sc.code == kExitOk);
    CHECK(nlohmann::json::parse(sc.out).is_object());
  }
}
