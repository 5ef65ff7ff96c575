#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

#include "catch_amalgamated.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(std::string const& args) {
  std::string cmd = std::string(PSL_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(std::string const& args, int expected_code = 0) {
  auto r = run(args);
  REQUIRE(r.code == expected_code);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("report header") {
  auto j = run_json("stats --model free2 --cset e,x,y --bset e,x,y --seed 7");
  CHECK(j["command"] == "stats");
  CHECK(j["seed"] == 7);
  CHECK(j.contains("claim"));
  CHECK(j.contains("caps"));
  CHECK(j.contains("scope"));
}

TEST_CASE("stats") {
  auto j = run_json("stats --model klein --cset e,u,v --bset 'e,u^-1,v^-1,v^-1u'");
  CHECK(j["result"]["BC"].size() == 8);
  auto z = run_json("stats --model z2 --cset '0,0;1,0;0,1' --bset '0,0;1,0'");
  CHECK(z["result"]["BC"].size() == 5);
}

TEST_CASE("parse errors exit with 1") {
  CHECK(run("stats --model bogus --cset e --bset e").code == 1);
  CHECK(run("stats --model free2 --cset 'e,q' --bset e").code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("stats --model quotient --relators 'x^2y^-2' --cset e,x --bset 'x^(' ").code == 1);
}

TEST_CASE("graph") {
  auto dot = run("graph --model free2 --cset e,x,y --bset 'e,x,y,xy^-1' --out dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("graph P {", 0) == 0);
  auto j = run_json("graph --model heisenberg --cset e,x,y --bset 'e,x,y,xy^-1,x^2'");
  CHECK(j["result"].contains("pattern_embeddings"));
}

TEST_CASE("table-c4") {
  auto tsv = run("table-c4 --out tsv");
  CHECK(tsv.code == 0);
  CHECK(std::count(tsv.out.begin(), tsv.out.end(), '\n') == 37);
  CHECK(tsv.out.rfind("n\tR\tE\n", 0) == 0);
  auto j = run_json("table-c4");
  CHECK(j["result"]["rows"].size() == 36);
  CHECK(j["result"]["matches_reference"] == true);
}

TEST_CASE("triangles") {
  auto j = run_json("triangles");
  CHECK(j["result"]["rows"].size() == 13);
  CHECK(j["exclusivity"].size() == 3);
}

TEST_CASE("pairs report the refuted witnesses") {
  auto j = run_json("pairs --workers 1", 2);
  CHECK(j["result"]["pair_count"] == 210);
  CHECK(j["result"]["regular_resolved"] == 201);
  CHECK(j["result"]["torsion_pairs_equal_listed"] == true);
  CHECK(j["result"]["contrary"] == 2);
}

TEST_CASE("kappa and desk checks") {
  auto j = run_json("kappa --model klein --cset e,x,y --k 4 --radius 3");
  CHECK(j["result"]["kappa_min"] == 4);
  CHECK(j["result"]["min_size_BC"] == 8);
  auto d = run_json("desk-checks");
  for (auto const& row : d["result"]) CHECK(row["holds"] == true);
}

TEST_CASE("certificates") {
  auto path = (std::filesystem::temp_directory_path() / "psl_cli_cert.json").string();
  CHECK(run("certify --positive-control -o " + path).code == 0);
  auto v = run_json("verify-cert --in " + path);
  CHECK(v["verified"] == true);

  std::ifstream in(path);
  auto cert = nlohmann::json::parse(in);
  in.close();
  cert["beta"]["terms"].erase("x");
  std::ofstream(path) << cert.dump();
  CHECK(run("verify-cert --in " + path).code == 2);
  std::filesystem::remove(path);

  auto scan = run_json("scan-supports --model free2 --cset e,x,y --max-support 7 --radius 2");
  CHECK(scan["result"]["certificates"].empty());
}
