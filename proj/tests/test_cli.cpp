#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shortlist/cli.hpp"

using namespace shortlist;

namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string data_path(const std::string& rel) {
  return std::string(SHORTLIST_DATA_DIR) + "/" + rel;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() /
                   ("shortlist_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("winners on the running example") {
  const Result r = run_cli({"winners", "--ballots", data_path("example1.ballots"),
                            "--rule", "qncsa:q=0.5"});
  CHECK(r.status == 0);
  CHECK(r.out.find("size: 4") != std::string::npos);
  CHECK(r.out.find("winners: c1; c2; c3; c4") != std::string::npos);

  const Result gap = run_cli({"winners", "--ballots", data_path("example1.ballots"),
                              "--rule", "fgap:k=2"});
  CHECK(gap.status == 0);
  CHECK(gap.out.find("size: 4") != std::string::npos);

  const Result sp = run_cli({"winners", "--ballots", data_path("example1.ballots"),
                             "--rule", "sp:order=1,6,0"});
  CHECK(sp.status == 0);
  CHECK(sp.out.find("size: 0") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"winners", "--ballots", data_path("example1.ballots"), "--rule",
                 "nosuchrule"})
            .status == 2);
  CHECK(run_cli({"winners", "--nope"}).status == 2);
  CHECK(run_cli({"winners", "--ballots", "/does/not/exist", "--rule", "av"}).status == 1);
  CHECK(run_cli({}).status == 2);
  // zero-length / malformed grid is a usage error
  TempDir tmp;
  const std::string out = (tmp.path / "x.csv").string();
  CHECK(run_cli({"simulate", "--model", "noise", "--grid", "1:0:0.05", "--instances",
                 "2", "--seed", "1", "--out", out})
            .status == 2);
  CHECK(run_cli({"simulate", "--model", "noise", "--grid", "0:1:-1", "--instances", "2",
                 "--seed", "1", "--out", out})
            .status == 2);
  // --seed is mandatory for randomized commands
  CHECK(run_cli({"simulate", "--model", "noise", "--out", out}).status == 2);
}

TEST_CASE("help exits zero") {
  const Result r = run_cli({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("winners") != std::string::npos);
}

TEST_CASE("simulate writes deterministic csv across runs and job counts") {
  TempDir tmp;
  const std::string a = (tmp.path / "a.csv").string();
  const std::string b = (tmp.path / "b.csv").string();
  const std::vector<std::string> base = {"simulate",    "--model", "noise",
                                         "--rules",     "av,fgap:k=5",
                                         "--grid",      "0:1:0.25",
                                         "--instances", "30",
                                         "--seed",      "9"};
  auto with_out = [&](const std::string& path, int jobs) {
    std::vector<std::string> args = base;
    args.push_back("--out");
    args.push_back(path);
    args.push_back("--jobs");
    args.push_back(std::to_string(jobs));
    return run_cli(args);
  };
  CHECK(with_out(a, 1).status == 0);
  CHECK(with_out(b, 4).status == 0);
  const std::string ca = slurp(a), cb = slurp(b);
  CHECK(ca == cb);
  CHECK(ca.find("rule_spec,model,param,instances,precision,avg_size") == 0);
  CHECK(ca.find("fgap:k=5,noise,") != std::string::npos);
}

TEST_CASE("rule lists keep parameter commas attached") {
  TempDir tmp;
  const std::string out = (tmp.path / "t.csv").string();
  const Result r = run_cli({"simulate", "--model", "bias", "--rules",
                            "topfgap:s=3,k=2,av", "--grid", "0:0.5:0.5",
                            "--instances", "5", "--seed", "3", "--out", out});
  CHECK(r.status == 0);
  const std::string csv = slurp(out);
  // rule specs containing commas are quoted so the CSV stays rectangular
  CHECK(csv.find("\"topfgap:s=3,k=2\",bias") != std::string::npos);
  CHECK(csv.find("av,bias") != std::string::npos);
}

TEST_CASE("csv fields quote commas and double quotes") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("sweep produces points and a frontier") {
  TempDir tmp;
  const std::string points = (tmp.path / "points.csv").string();
  const std::string frontier = (tmp.path / "front.csv").string();
  const Result r = run_cli({"sweep", "--instances-from", data_path("hugo_fixture"),
                            "--rules", "isp:s=6,isp:s=7,av", "--out", points,
                            "--frontier", frontier});
  REQUIRE(r.status == 0);
  const std::string pc = slurp(points);
  CHECK(pc.find("rule_spec,avg_size,precision,instances,on_frontier") == 0);
  CHECK(pc.find("isp:s=7,7.166667,1.000000,6,") != std::string::npos);
  const std::string fc = slurp(frontier);
  CHECK(fc.find("on_frontier") != std::string::npos);
}

TEST_CASE("synthetic sweep requires a seed") {
  TempDir tmp;
  const std::string out = (tmp.path / "x.csv").string();
  CHECK(run_cli({"sweep", "--instances-from", "noise", "--out", out}).status == 2);
  CHECK(run_cli({"sweep", "--instances-from", "noise", "--out", out, "--seed", "4",
                 "--instances", "3", "--grid", "0:0.5:0.25", "--rules", "av"})
            .status == 0);
}

TEST_CASE("cluster prints the partition and winning cluster") {
  const Result r = run_cli({"cluster", "--ballots", data_path("example1.ballots"),
                            "--config", "dist=single,beta=2"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("cluster 1 (scores 10..6): c1; c2; c3; c4; c5") != std::string::npos);
  CHECK(r.out.find("cluster 2 (scores 3..0): c6; c7; c8") != std::string::npos);
  CHECK(r.out.find("winning (5): c1; c2; c3; c4; c5") != std::string::npos);
}

TEST_CASE("hugo command reports metrics, histogram and eph sets") {
  const Result r = run_cli({"hugo", "--data", data_path("hugo_fixture"), "--rule",
                            "isp:s=7", "--eph"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("elections: 6") != std::string::npos);
  CHECK(r.out.find("precision: 1.000000") != std::string::npos);
  CHECK(r.out.find("avg_size: 7.166667") != std::string::npos);
  CHECK(r.out.find("7,1") != std::string::npos);  // histogram row: position 7 count 1
  CHECK(r.out.find("eph: 2018/best-novel:") != std::string::npos);
}

TEST_CASE("axioms command on one rule emits a report") {
  const Result r = run_cli({"axioms", "--rule", "fgap:k=5", "--axiom", "stability:l=5",
                            "--trials", "300", "--seed", "12"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("fgap:k=5,stability:l=5,pass,300") != std::string::npos);
}

TEST_CASE("axioms table audit against the documented matrix") {
  TempDir tmp;
  const std::string wit = (tmp.path / "witnesses.txt").string();
  const Result r = run_cli({"axioms", "--table1", "--expect-table1", "--trials", "250",
                            "--seed", "5", "--jobs", "4", "--witnesses", wit});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("rule,unanimity,") == 0);
  CHECK(slurp(wit).find("rule: firstmajority") != std::string::npos);
}

TEST_CASE("single-rule row comparison against the documented matrix") {
  const Result r = run_cli({"axioms", "--rule", "fgap:k=5", "--expect-table1",
                            "--trials", "250", "--seed", "5", "--jobs", "4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("fgap:k=5,antiunanimity,fail,fail") != std::string::npos);
  // a non-representative rule cannot be compared
  CHECK(run_cli({"axioms", "--rule", "fgap:k=4", "--expect-table1", "--trials", "10",
                 "--seed", "5"})
            .status == 2);
}

TEST_CASE("the default simulate grid has 21 points") {
  CHECK(cli::detail::parse_grid("0:1:0.05").size() == 21);
  CHECK(cli::detail::parse_grid("0:0.5:0.05").size() == 11);
}
