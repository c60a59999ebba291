#include "heatpot/commands.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "heatpot/oracle.hpp"

namespace heatpot {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json check(const std::string& name, double value, const std::string& op, double tolerance) {
  const bool ok = op == "<=" ? value <= tolerance : value >= tolerance;
  return json{{"name", name}, {"value", value}, {"op", op}, {"tolerance", tolerance}, {"passed", ok}};
}

bool all_passed(const json& checks) {
  for (const json& c : checks) {
    if (!c.at("passed").get<bool>()) return false;
  }
  return true;
}

json point_json(const SpaceVec& p) {
  return p.dim() == 1 ? json::array({p[0]}) : json::array({p[0], p[1]});
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void csv_point(std::ostringstream& os, const SpaceVec& p) {
  for (int k = 0; k < p.dim(); ++k) os << format_double(p[k]) << ',';
}

std::string csv_point_header(int dim) { return dim == 1 ? "x," : "x,y,"; }

json header(const Scenario& s, const std::string& command) {
  return json{{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"scenario", s.echo}};
}

// Value of a stored grid solution at (x, t), linear in time between levels.
double grid_value(const GridSolution& g, const SpaceVec& x, double t) {
  const double dt = g.ts.back() / static_cast<double>(g.ts.size() - 1);
  const double pos = t / dt;
  const auto lo = static_cast<std::size_t>(std::floor(pos + 1e-9));
  if (lo + 1 >= g.ts.size()) return g.interpolate(g.ts.size() - 1, x);
  const double frac = std::max(0.0, pos - static_cast<double>(lo));
  if (frac < 1e-9) return g.interpolate(lo, x);
  return (1.0 - frac) * g.interpolate(lo, x) + frac * g.interpolate(lo + 1, x);
}

}  // namespace

std::string kernel_eval_csv(int m, int n, const std::vector<SpaceVec>& xs,
                            const std::vector<double>& ts, const SpaceVec& normal) {
  const KernelOrder order(m, n);
  if (normal.dim() != n) throw ConfigError("normal dimension does not match n");
  std::ostringstream os;
  os << "m,n," << csv_point_header(n) << "t,value," << (n == 1 ? "grad_x," : "grad_x,grad_y,")
     << "normal_derivative\n";
  for (const SpaceVec& x : xs) {
    if (x.dim() != n) throw ConfigError("point dimension does not match n");
    for (double t : ts) {
      const double value = iterated_kernel(order, x, t);
      SpaceVec grad = SpaceVec::zero(n);
      double dn = 0.0;
      if (t > 0.0) {
        grad = kernel_gradient(order, x, t);
        dn = kernel_normal_derivative(order, x, t, normal);
      }
      os << m << ',' << n << ',';
      csv_point(os, x);
      os << format_double(t) << ',' << format_double(value) << ',';
      for (int k = 0; k < n; ++k) os << format_double(grad[k]) << ',';
      os << format_double(dn) << '\n';
    }
  }
  return os.str();
}

CommandResult run_verify_theorem1(const Scenario& s, const PotentialOptions& opts) {
  if (s.order.n() == 2 && !s.allow_2d) {
    throw ConfigError("2-D boundary verification is gated: set verification.allow_2d");
  }
  const auto start = Clock::now();
  json report = header(s, "verify-theorem1");
  json levels = json::array(), level_seconds = json::array();
  std::vector<ResidualReport> results;
  std::ostringstream csv;
  csv << "level,t";
  for (int k = 0; k < s.order.m(); ++k) csv << ",bc_k" << k;
  csv << ",interior\n";

  for (int level = 0; level <= s.refinement_levels; ++level) {
    const auto t0 = Clock::now();
    const ResidualReport r = verify_theorem1(make_verification_setup(s, level, opts));
    level_seconds.push_back(seconds_since(t0));
    levels.push_back(json{{"level", level},
                          {"time_nodes", r.time_nodes},
                          {"volume_nodes", r.volume_nodes},
                          {"boundary_nodes", r.boundary_nodes},
                          {"sample_times", r.sample_times},
                          {"bc_max", r.bc_max},
                          {"bc_mean", r.bc_mean},
                          {"scale", r.scale},
                          {"bc_normalized", r.bc_normalized},
                          {"bc_by_time", r.bc_by_time},
                          {"interior_max", r.interior_max},
                          {"interior_normalized", r.interior_normalized},
                          {"interior_by_time", r.interior_by_time},
                          {"pde_max", r.pde_max},
                          {"pde_normalized", r.pde_normalized},
                          {"ic_slope", r.ic_slope}});
    for (std::size_t i = 0; i < r.sample_times.size(); ++i) {
      csv << level << ',' << format_double(r.sample_times[i]);
      for (double v : r.bc_by_time[i]) csv << ',' << format_double(v);
      csv << ',' << format_double(r.interior_by_time[i]) << '\n';
    }
    results.push_back(r);
  }

  const ToleranceSpec& tol = s.tolerances;
  const ResidualReport& base = results.front();
  json checks = json::array();
  checks.push_back(check("bc_normalized", base.bc_normalized, "<=", tol.bc));
  checks.push_back(check("interior_normalized", base.interior_normalized, "<=", tol.interior));
  if (s.source.kind != SourceSpec::Kind::zero) {
    checks.push_back(check("pde_normalized", base.pde_normalized, "<=", tol.pde));
    checks.push_back(check("ic_slope", base.ic_slope, ">=", tol.ic_slope_factor * s.order.m()));
  }
  json orders = json::object();
  if (s.source.kind != SourceSpec::Kind::zero) {
    json bc_orders = json::array(), int_orders = json::array();
    for (std::size_t l = 0; l + 1 < results.size(); ++l) {
      const double rb = std::log2(results[l].bc_normalized / results[l + 1].bc_normalized);
      const double ri =
          std::log2(results[l].interior_normalized / results[l + 1].interior_normalized);
      bc_orders.push_back(rb);
      int_orders.push_back(ri);
      const std::string tag = std::to_string(l) + "_to_" + std::to_string(l + 1);
      checks.push_back(check("bc_order_" + tag, rb, ">=", tol.convergence_order));
      checks.push_back(check("interior_order_" + tag, ri, ">=", tol.convergence_order));
    }
    orders["bc"] = bc_orders;
    orders["interior"] = int_orders;
  }
  report["levels"] = levels;
  report["convergence_orders"] = orders;
  report["checks"] = checks;
  report["passed"] = all_passed(checks);
  report["timings"] = json{{"level_seconds", level_seconds}, {"total_seconds", seconds_since(start)}};
  return CommandResult{report, csv.str(), report["passed"].get<bool>()};
}

std::vector<std::pair<SpaceVec, double>> default_theorem2_probes(const Scenario& s) {
  const Box b = s.domain.bounding_box();
  const double T = s.horizon;
  std::vector<std::pair<SpaceVec, double>> out;
  if (s.domain.dim() == 1) {
    for (double t : {T / 4, T / 2, T}) {
      for (double f : {0.25, 0.5, 0.75}) out.emplace_back(SpaceVec(b.lo[0] + f * (b.hi[0] - b.lo[0])), t);
    }
    return out;
  }
  for (double fy : {0.25, 0.5, 0.75}) {
    for (double fx : {0.25, 0.5, 0.75}) {
      out.emplace_back(SpaceVec(b.lo[0] + fx * (b.hi[0] - b.lo[0]), b.lo[1] + fy * (b.hi[1] - b.lo[1])),
                       T);
    }
  }
  return out;
}

CommandResult run_solve_theorem2(const Scenario& s,
                                 std::vector<std::pair<SpaceVec, double>> probes,
                                 const PotentialOptions& opts) {
  if (s.order.m() != 1) throw ConfigError("solve-theorem2 needs an m = 1 scenario");
  if (s.domain.is_disk()) throw ConfigError("Green functions are available for Interval and Rectangle only");
  if (probes.empty()) probes = default_theorem2_probes(s);
  for (const auto& [x, t] : probes) {
    if (x.dim() != s.domain.dim() || !contains(s.domain, x) || distance_to_boundary(s.domain, x) <= 0.0) {
      throw ConfigError("probe point outside the domain");
    }
    if (!(t > 0.0) || t > s.horizon * (1.0 + 1e-12)) throw ConfigError("probe time outside (0, T]");
  }
  const auto start = Clock::now();
  const SourceField f = make_source(s);
  const VolumeRule vrule = scenario_volume_rule(s);
  const BoundaryRule brule = scenario_boundary_rule(s);
  const BoundaryFunction phi = make_boundary_function(s, brule);
  const KernelOrder first(1, s.order.n());
  PotentialOptions serial = opts;
  serial.backend = Backend::serial;

  std::vector<double> u(probes.size()), potential(probes.size());
  for_each(opts.backend, probes.size(), [&](std::size_t i) {
    const auto& [x, t] = probes[i];
    const TimeRule trule = scenario_time_rule(s, t);
    const BoundaryDensity density = BoundaryDensity::sample(brule, trule, phi);
    u[i] = solve_m1(f, density, vrule, brule, trule, x, t, {}, serial);
    potential[i] = volume_potential(first, f, vrule, trule, x, t, serial);
  });
  const double solve_seconds = seconds_since(start);

  // Oracle: boundary values of the solution are V - phi.
  const auto t_oracle = Clock::now();
  const DirichletData g = [&](const SpaceVec& xb, double t) {
    if (t <= 0.0) return 0.0;
    const int node = brule.find_node(xb, 1e-9);
    const double ph = phi(node < 0 ? 0 : node, t);
    return volume_potential(first, f, vrule, scenario_time_rule(s, t), xb, t, serial) - ph;
  };
  const GridSolution cn = crank_nicolson_m1(f, g, s.domain, s.resolution.oracle_grid,
                                            s.resolution.oracle_steps, s.horizon);
  const double oracle_seconds = seconds_since(t_oracle);

  double err = 0.0, scale = 0.0;
  json rows = json::array();
  std::ostringstream csv;
  csv << csv_point_header(s.domain.dim()) << "t,u,u_oracle\n";
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& [x, t] = probes[i];
    const double ref = grid_value(cn, x, t);
    err = std::max(err, std::abs(u[i] - ref));
    scale = std::max({scale, std::abs(ref), std::abs(phi(0, t))});
    rows.push_back(json{{"x", point_json(x)}, {"t", t}, {"u", u[i]}, {"u_oracle", ref}});
    csv_point(csv, x);
    csv << format_double(t) << ',' << format_double(u[i]) << ',' << format_double(ref) << '\n';
  }
  const double normalized = scale > 0.0 ? err / scale : err;

  json checks = json::array();
  checks.push_back(check("oracle_linf_normalized", normalized, "<=", s.tolerances.oracle));
  if (s.boundary.kind == BoundarySpec::Kind::zero) {
    bool same = true;
    for (std::size_t i = 0; i < u.size(); ++i) same = same && u[i] == potential[i];
    checks.push_back(check("zero_data_matches_potential", same ? 1.0 : 0.0, ">=", 1.0));
  }
  json boundary = json::object();
  if (s.domain.is_interval()) {
    const TimeRule trule = scenario_time_rule(s, s.horizon);
    const CauchyTraces tr = solve_m1_traces(f, phi, make_boundary_rate(s, brule), vrule, brule,
                                            trule, {}, opts);
    double worst = 0.0, bscale = scale;
    for (std::size_t i = 0; i < brule.size(); ++i) {
      worst = std::max(worst, std::abs(bc_residual_inhomogeneous(tr, phi, brule.nodes()[i].point,
                                                                 s.horizon, opts)));
      bscale = std::max(bscale, std::abs(tr.dirichlet_now[0][i]));
    }
    const double nb = bscale > 0.0 ? worst / bscale : worst;
    boundary = json{{"max", worst}, {"normalized", nb}};
    checks.push_back(check("inhomogeneous_bc_normalized", nb, "<=", 2.0 * s.tolerances.oracle));
  }

  json report = header(s, "solve-theorem2");
  report["probes"] = rows;
  report["oracle"] = json{{"grid", s.resolution.oracle_grid},
                          {"steps", s.resolution.oracle_steps},
                          {"linf", err},
                          {"scale", scale},
                          {"linf_normalized", normalized}};
  report["inhomogeneous_bc"] = boundary;
  report["checks"] = checks;
  report["passed"] = all_passed(checks);
  report["timings"] = json{{"solve_seconds", solve_seconds},
                           {"oracle_seconds", oracle_seconds},
                           {"total_seconds", seconds_since(start)}};
  return CommandResult{report, csv.str(), report["passed"].get<bool>()};
}

CommandResult run_compare_oracle(const Scenario& s, const PotentialOptions& opts) {
  if (s.order.m() < 2) throw ConfigError("compare-oracle needs m >= 2 (m = 1 has nothing to compare)");
  const auto start = Clock::now();
  const auto probes = random_space_time_probes(s);
  const SourceField f = make_source(s);
  const VolumeRule vrule = scenario_volume_rule(s);
  PotentialOptions serial = opts;
  serial.backend = Backend::serial;

  std::vector<double> direct(probes.size()), cascade(probes.size());
  for_each(opts.backend, probes.size(), [&](std::size_t i) {
    const auto& [x, t] = probes[i];
    direct[i] = volume_potential(s.order, f, vrule, scenario_time_rule(s, t), x, t, serial);
  });
  const double direct_seconds = seconds_since(start);
  const auto t_cascade = Clock::now();
  CascadeOptions co;
  co.modes = s.resolution.cascade_modes;
  co.steps = s.resolution.cascade_steps;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    cascade[i] = cascade_volume_potential(s.order.m(), f, s.domain, probes[i].first,
                                          probes[i].second, co);
  }
  const double cascade_seconds = seconds_since(t_cascade);

  double scale = 0.0, err = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    scale = std::max(scale, std::abs(direct[i]));
    err = std::max(err, std::abs(direct[i] - cascade[i]));
  }
  const double normalized = scale > 0.0 ? err / scale : err;
  json rows = json::array();
  std::ostringstream csv;
  csv << csv_point_header(s.domain.dim()) << "t,direct,cascade,normalized_error\n";
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto& [x, t] = probes[i];
    const double e = scale > 0.0 ? std::abs(direct[i] - cascade[i]) / scale : 0.0;
    rows.push_back(json{{"x", point_json(x)}, {"t", t}, {"direct", direct[i]},
                        {"cascade", cascade[i]}, {"normalized_error", e}});
    csv_point(csv, x);
    csv << format_double(t) << ',' << format_double(direct[i]) << ',' << format_double(cascade[i])
        << ',' << format_double(e) << '\n';
  }
  json checks = json::array();
  checks.push_back(check("cascade_normalized", normalized, "<=", s.tolerances.oracle));
  json report = header(s, "compare-oracle");
  report["seed"] = s.seed;
  report["probes"] = rows;
  report["scale"] = scale;
  report["checks"] = checks;
  report["passed"] = all_passed(checks);
  report["timings"] = json{{"direct_seconds", direct_seconds},
                           {"cascade_seconds", cascade_seconds},
                           {"total_seconds", seconds_since(start)}};
  return CommandResult{report, csv.str(), report["passed"].get<bool>()};
}

}  // namespace heatpot
