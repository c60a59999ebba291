#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScenarios = HEATPOT_SCENARIO_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "heatpot_cli_test.out";
  const std::string cmd = std::string(HEATPOT_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string bundled(const std::string& name) { return (kScenarios / (name + ".json")).string(); }

std::string variant(const std::string& name, const std::string& tag,
                    const std::function<void(json&)>& edit) {
  std::ifstream in(bundled(name));
  json doc = json::parse(in);
  edit(doc);
  const fs::path path = fs::temp_directory_path() / ("heatpot_" + tag + ".json");
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

}  // namespace

TEST_CASE("cli kernel-eval") {
  Run r = run("kernel-eval --m 1 --n 1 --x 0 --t 0.0795775");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m,n,x,t,value", 0) == 0);
  const std::string row = r.out.substr(r.out.find('\n') + 1);
  std::stringstream ss(row);
  std::string cell;
  for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
  std::getline(ss, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(1.0).epsilon(1e-6));

  r = run("kernel-eval --m 1 --n 1 --x 0 --t -1");
  CHECK(r.code == 0);
  CHECK(r.out.find("1,1,0,-1,0,") != std::string::npos);

  CHECK(run("kernel-eval --m 25 --n 1 --x 0 --t 1").code == 2);
  CHECK(run("kernel-eval --m 1 --n 3 --x 0 --t 1").code == 2);
  CHECK(run("kernel-eval --m 1 --n 2 --x 0 --t 1").code == 2);
  CHECK(run("kernel-eval --m 1 --n 1 --x zero --t 1").code == 2);
  CHECK(run("kernel-eval --m 1").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("kernel-eval --m 2 --n 2 --x 0.1,0.2 --t 0.5 --normal 0,1").code == 0);
}

TEST_CASE("cli verify-theorem1 exit codes") {
  Run r = run("verify-theorem1 " + bundled("m1_interval_bump"));
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report.at("passed").get<bool>());
  CHECK(report.at("command") == "verify-theorem1");

  const auto touching = variant("m1_interval_bump", "touching", [](json& d) {
    d["source"]["center"] = json::array({0.7});
  });
  CHECK(run("verify-theorem1 " + touching).code == 2);
  const auto typo = variant("m1_interval_bump", "typo", [](json& d) { d["tolerances"]["bcc"] = 1.0; });
  CHECK(run("verify-theorem1 " + typo).code == 2);
  const auto strict = variant("m1_interval_bump", "strict", [](json& d) { d["tolerances"]["bc"] = 1e-14; });
  CHECK(run("verify-theorem1 " + strict).code == 1);
  const auto gated = variant("m1_rect_bump", "gated", [](json& d) {
    d["verification"]["allow_2d"] = false;
  });
  CHECK(run("verify-theorem1 " + gated).code == 2);
  CHECK(run("verify-theorem1 /nonexistent/scenario.json").code == 2);
}

TEST_CASE("cli solve-theorem2 exit codes") {
  CHECK(run("solve-theorem2 " + bundled("m1_interval_ramp_phi")).code == 0);
  CHECK(run("solve-theorem2 " + bundled("m2_interval_bump")).code == 2);
  CHECK(run("solve-theorem2 " + bundled("m1_interval_bump") + " --probe 0.2,0.3").code == 0);
  CHECK(run("solve-theorem2 " + bundled("m1_interval_bump") + " --probe 3.0,0.3").code == 2);
  const auto huge = variant("m1_interval_bump", "huge", [](json& d) { d["source"]["amplitude"] = 1e308; });
  CHECK(run("solve-theorem2 " + huge).code == 3);
}

TEST_CASE("cli compare-oracle exit codes and outputs") {
  const fs::path report = fs::temp_directory_path() / "heatpot_cmp.json";
  const fs::path csv = fs::temp_directory_path() / "heatpot_cmp.csv";
  Run r = run("compare-oracle " + bundled("m2_interval_bump") + " --report " + report.string() +
              " --csv " + csv.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(report);
  const json doc = json::parse(in);
  CHECK(doc.at("probes").size() == 10);
  std::ifstream table(csv);
  std::string head;
  std::getline(table, head);
  CHECK(head == "x,t,direct,cascade,normalized_error");
  CHECK(run("compare-oracle " + bundled("m3_interval_bump")).code == 0);
  CHECK(run("compare-oracle " + bundled("m1_interval_bump")).code == 2);
}
