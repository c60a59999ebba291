#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatpot/commands.hpp"
#include "heatpot/errors.hpp"

namespace {

using namespace heatpot;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

SpaceVec to_point(const std::vector<double>& v, int n) {
  if (static_cast<int>(v.size()) != n) {
    throw ConfigError("expected " + std::to_string(n) + " coordinates per point");
  }
  return n == 1 ? SpaceVec(v[0]) : SpaceVec(v[0], v[1]);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct OutputFlags {
  std::string report;
  std::string csv;
};

int emit(const CommandResult& result, const Scenario& s, const OutputFlags& flags) {
  const std::string report_path = flags.report.empty() ? s.report_path : flags.report;
  const std::string csv_path = flags.csv.empty() ? s.csv_path : flags.csv;
  const std::string text = result.report.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    write_text(report_path, text);
  }
  if (!csv_path.empty()) write_text(csv_path, result.csv);
  for (const auto& c : result.report.at("checks")) {
    if (!c.at("passed").get<bool>()) {
      std::cerr << "check failed: " << c.at("name").get<std::string>() << " = "
                << c.at("value").get<double>() << " (" << c.at("op").get<std::string>() << ' '
                << c.at("tolerance").get<double>() << ")\n";
    }
  }
  return result.passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated heat-operator potentials: verification and solves"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "use the serial reference backend");

  auto* kernel = app.add_subcommand("kernel-eval", "tabulate eps_{m,n}, gradient and normal derivative");
  int m = 1, n = 1;
  std::vector<std::string> xs_text;
  std::vector<double> ts;
  std::string normal_text;
  kernel->add_option("--m", m, "order m (1..20)")->required();
  kernel->add_option("--n", n, "space dimension (1 or 2)")->required();
  kernel->add_option("--x", xs_text, "points; use \"a,b\" for n = 2")->required();
  kernel->add_option("--t", ts, "times")->required();
  kernel->add_option("--normal", normal_text, "unit normal, default +e1");

  OutputFlags flags;
  std::string scenario_path;
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("--report", flags.report, "report path (default: scenario output, else stdout)");
    sub->add_option("--csv", flags.csv, "CSV path (default: scenario output)");
  };
  auto* verify = app.add_subcommand("verify-theorem1", "boundary and interior residuals of the volume potential");
  add_scenario(verify);
  auto* solve = app.add_subcommand("solve-theorem2", "m = 1 Green-function solve against Crank-Nicolson");
  add_scenario(solve);
  std::vector<std::string> probe_text;
  solve->add_option("--probe", probe_text, "probe \"x,t\" or \"x,y,t\"; repeatable");
  auto* compare = app.add_subcommand("compare-oracle", "direct potential against the cascade construction");
  add_scenario(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  PotentialOptions opts;
  if (serial) opts.backend = Backend::serial;

  try {
    if (*kernel) {
      std::vector<SpaceVec> xs;
      for (const auto& x : xs_text) xs.push_back(to_point(split_numbers(x), n));
      SpaceVec normal = n == 1 ? SpaceVec(1.0) : SpaceVec(1.0, 0.0);
      if (!normal_text.empty()) normal = to_point(split_numbers(normal_text), n);
      std::cout << kernel_eval_csv(m, n, xs, ts, normal);
      return kExitPass;
    }
    const Scenario s = load_scenario(scenario_path);
    if (*verify) return emit(run_verify_theorem1(s, opts), s, flags);
    if (*compare) return emit(run_compare_oracle(s, opts), s, flags);
    std::vector<std::pair<SpaceVec, double>> probes;
    for (const auto& p : probe_text) {
      std::vector<double> v = split_numbers(p);
      if (v.size() < 2) throw ConfigError("probe needs a point and a time");
      const double t = v.back();
      v.pop_back();
      probes.emplace_back(to_point(v, s.order.n()), t);
    }
    return emit(run_solve_theorem2(s, probes, opts), s, flags);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
