#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polarpunct/cli.hpp"
#include "polarpunct/construction.hpp"

using namespace polarpunct;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("analyze") {
  auto r = run({"analyze", "--n", "2", "--pattern", "1010", "--model", "dcm"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["E"] == json({1, 3}));
  CHECK(j["reciprocal"] == true);

  r = run({"analyze", "--n", "2", "--pattern", "1111", "--model", "ucm", "--verbose"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["D"] == json::array());
  CHECK(j["reciprocal"] == true);
  CHECK(j["z"] == json({1, 1, 1, 1}));

  r = run({"analyze", "--n", "2", "--pattern", "[0]", "--pretty"});
  CHECK(r.code == 0);
  CHECK(r.out.find("reciprocal  yes") != std::string::npos);

  CHECK(run({"analyze", "--n", "2", "--pattern", "10"}).code == 2);
  CHECK(run({"analyze", "--n", "2", "--pattern", "1111", "--model", "abc"}).code == 2);
  CHECK(run({"analyze", "--n", "x", "--pattern", "1111"}).code == 2);
  CHECK(run({"analyze", "--pattern", "1111"}).code == 2);
}

TEST_CASE("catastrophic") {
  auto r = run({"catastrophic", "--n", "2", "--channel", "2", "--weights"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["coeffs"] == json::parse("[[2,2],[3,4],[4,1]]"));
  CHECK(j["min_zeros"] == 2);

  r = run({"catastrophic", "--n", "1", "--channel", "0", "--enumerate"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["patterns"] == json({"00", "01", "10"}));

  CHECK(run({"catastrophic", "--n", "2", "--channel", "9"}).code == 2);
  CHECK(run({"catastrophic", "--n", "5", "--channel", "0", "--enumerate"}).code == 1);
  r = run({"catastrophic", "--n", "5", "--channel", "31", "--enumerate", "--force"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 1);

  r = run({"catastrophic", "--n", "9", "--channel", "0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["coeffs"][100][1].is_string());

  r = run({"catastrophic", "--n", "2", "--info-set", "2,3", "--pattern", "1010"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["catastrophic"] == true);
  r = run({"catastrophic", "--n", "2", "--info-set", "2,3", "--pattern", "1010", "--all-dead"});
  CHECK(json::parse(r.out)["catastrophic"] == false);
  CHECK(run({"catastrophic", "--n", "2", "--info-set", "2,3"}).code == 2);
}

TEST_CASE("construct") {
  auto r = run({"construct", "--n", "3", "--k", "2", "--method", "reciprocal", "--np", "6,4",
                "--info-set", "5,7"});
  REQUIRE(r.code == 0);
  const auto fam = json::parse(r.out).get<RcFamily>();
  REQUIRE(fam.patterns.size() == 2);
  CHECK(fam.patterns[0].zero_set() == IndexSet{0, 1, 2, 4});
  CHECK(fam.patterns[1].zero_set() == IndexSet{0, 1});
  const auto report = json::parse(r.err);
  CHECK(report["nested"] == true);
  CHECK(report["patterns"][0]["non_catastrophic"] == true);

  r = run({"construct", "--n", "3", "--k", "3", "--method", "greedy", "--np", "3"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["patterns"][0]["np"] == 3);

  CHECK(run({"construct", "--n", "3", "--k", "2", "--method", "greedy", "--np", "200"}).code == 2);
  CHECK(run({"construct", "--n", "3", "--k", "4", "--method", "greedy", "--np", "3"}).code == 1);
  CHECK(run({"construct", "--n", "3", "--k", "2", "--method", "reciprocal", "--np", "3",
             "--info-set", "4,6"})
            .code == 1);
  CHECK(run({"construct", "--n", "3", "--k", "2", "--method", "greedy", "--model", "dcm", "--np",
             "4"})
            .code == 2);
  CHECK(run({"construct", "--n", "3", "--k", "2", "--method", "magic", "--np", "4"}).code == 2);

  const std::string path = "test_cli_family.json";
  r = run({"construct", "--n", "5", "--k", "12", "--method", "reciprocal", "--model", "dcm", "--np",
           "24,28", "--out", path});
  REQUIRE(r.code == 0);
  const auto dcm = read_family_file(path);
  CHECK(dcm.model == ChannelModel::Dcm);
  CHECK(dcm.patterns.front().transmitted_length() == 24);
  for (const auto& p : json::parse(r.out)["patterns"]) CHECK(p["reciprocal"] == true);
  std::remove(path.c_str());
}

TEST_CASE("simulate") {
  const std::string fam = "test_cli_sim_family.json";
  REQUIRE(run({"construct", "--n", "5", "--k", "16", "--method", "reciprocal", "--np", "24,28",
               "--out", fam})
              .code == 0);
  const std::vector<std::string> base{"simulate", "--family", fam, "--snr", "1:2:1", "--max-trials",
                                      "300", "--target-errors", "20", "--list", "2", "--seed", "9"};
  auto a = run(base);
  REQUIRE(a.code == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 5);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == a.out);
  setenv("POLARPUNCT_THREADS", "2", 1);
  CHECK(run(base).out == a.out);
  setenv("POLARPUNCT_THREADS", "zero", 1);
  CHECK(run(base).code == 2);
  unsetenv("POLARPUNCT_THREADS");

  auto single = run({"simulate", "--family", fam, "--snr", "4:4:1", "--max-trials", "50", "--list",
                     "1", "--crc", "0"});
  REQUIRE(single.code == 0);
  CHECK(std::count(single.out.begin(), single.out.end(), '\n') == 3);

  const std::string csv = "test_cli_sim.csv", plot = "test_cli_sim.dat";
  auto withfiles = base;
  withfiles.insert(withfiles.end(), {"--out", csv, "--gnuplot", plot, "--exact"});
  REQUIRE(run(withfiles).code == 0);
  CHECK(slurp(csv).rfind("n,np,k,", 0) == 0);
  CHECK(slurp(plot).find("# pattern 0") != std::string::npos);

  CHECK(run({"simulate", "--family", "missing.json", "--snr", "1"}).code == 1);
  CHECK(run({"simulate", "--family", fam, "--snr", "x"}).code == 2);
  CHECK(run({"simulate", "--family", fam, "--snr", "1", "--crc", "3"}).code == 2);
  std::remove(fam.c_str());
  std::remove(csv.c_str());
  std::remove(plot.c_str());
}

TEST_CASE("catastrophic family member has FER one") {
  const std::string fam = "test_cli_bad_family.json";
  // Channel 2 of N = 4 dies when positions 1 and 3 are punctured.
  std::ofstream(fam) << R"({"n":2,"K":2,"info_set":[2,3],"model":"ucm","method":"greedy",)"
                     << R"("seed":0,"patterns":[{"np":2,"zeros":[1,3]}]})";
  auto r = run({"simulate", "--family", fam, "--snr", "0:10:5", "--max-trials", "200", "--target-errors", "1000", "--crc", "0",
                "--list", "4"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",200,200,1.000000e+00,") != std::string::npos);
  }
  CHECK(rows == 3);
  std::remove(fam.c_str());
}

TEST_CASE("help and usage") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
  r = run({"simulate", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--family", "--snr", "--max-trials", "--target-errors", "--list", "--seed",
                           "--crc", "--threads", "--out", "--gnuplot", "--exact"}) {
    CHECK(r.out.find(flag) != std::string::npos);
  }
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}
