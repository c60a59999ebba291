#include "heatpot/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

namespace heatpot {

namespace {

using nlohmann::json;

// Reads fields from one JSON object and rejects any it did not consume.
class Fields {
 public:
  Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& required(const std::string& key) {
    if (!obj_.contains(key)) throw ConfigError(where_ + ": missing field '" + key + "'");
    used_.insert(key);
    return obj_.at(key);
  }

  template <class T>
  T get(const std::string& key) {
    const json& v = required(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      throw ConfigError(where_ + "." + key + ": wrong type");
    }
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) {
        throw ConfigError(where_ + ": unknown field '" + it.key() + "'");
      }
    }
  }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

SpaceVec parse_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty() || v.size() > 2) {
    throw ConfigError(where + ": expected a point [x] or [x, y]");
  }
  for (const json& c : v) {
    if (!c.is_number()) throw ConfigError(where + ": coordinates must be numbers");
  }
  return v.size() == 1 ? SpaceVec(v[0].get<double>())
                       : SpaceVec(v[0].get<double>(), v[1].get<double>());
}

Domain parse_domain(const json& v) {
  Fields f(v, "domain");
  const std::string type = f.get<std::string>("type");
  Domain::Shape shape = Interval{0.0, 1.0};
  if (type == "interval") {
    shape = Interval{f.get<double>("a"), f.get<double>("b")};
  } else if (type == "rectangle") {
    shape = Rectangle{f.get<double>("ax"), f.get<double>("bx"), f.get<double>("ay"),
                      f.get<double>("by")};
  } else if (type == "disk") {
    const SpaceVec c = parse_point(f.required("center"), "domain.center");
    if (c.dim() != 2) throw ConfigError("domain.center: a disk needs a 2-D center");
    shape = Disk{c, f.get<double>("radius")};
  } else {
    throw ConfigError("domain.type: unknown shape '" + type + "'");
  }
  f.finish();
  return Domain(shape);
}

bool strictly_inside(const Domain& d, const SpaceVec& p) {
  return contains(d, p) && distance_to_boundary(d, p) > 0.0;
}

void check_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(what + " must be positive");
}

void check_positive(int v, const std::string& what) {
  if (v < 1) throw ConfigError(what + " must be a positive integer");
}

std::vector<SpaceVec> default_probes(const Domain& d) {
  const Box b = d.bounding_box();
  std::vector<SpaceVec> out;
  for (double frac : {0.5, 0.35, 0.65, 0.2, 0.8}) {
    SpaceVec p = b.lo;
    for (int k = 0; k < d.dim(); ++k) p[k] = b.lo[k] + frac * (b.hi[k] - b.lo[k]);
    if (d.dim() == 2) p[1] = b.lo[1] + (0.5 + 0.5 * (frac - 0.5)) * (b.hi[1] - b.lo[1]);
    out.push_back(p);
  }
  return out;
}

double time_profile(const std::string& name, double t, double T) {
  if (name == "constant") return 1.0;
  if (name == "linear") return t / T;
  return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * t / T);
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  Scenario s;
  s.echo = doc;
  Fields top(doc, "scenario");
  const int version = top.get<int>("schema_version");
  if (version != kScenarioSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  }
  s.name = top.get<std::string>("name");
  {
    Fields o(top.required("order"), "order");
    s.order = KernelOrder(o.get<int>("m"), o.get<int>("n"));
    o.finish();
  }
  s.domain = parse_domain(top.required("domain"));
  if (s.domain.dim() != s.order.n()) {
    throw ConfigError("order.n does not match the domain dimension");
  }
  s.horizon = top.get<double>("horizon");
  check_positive(s.horizon, "horizon");

  {
    Fields f(top.required("source"), "source");
    const std::string type = f.get<std::string>("type");
    if (type == "zero") {
      s.source.kind = SourceSpec::Kind::zero;
    } else if (type == "gaussian_bump") {
      s.source.kind = SourceSpec::Kind::gaussian_bump;
      s.source.center = parse_point(f.required("center"), "source.center");
      s.source.width = f.get<double>("width");
      s.source.amplitude = f.get<double>("amplitude", 1.0);
      s.source.time_profile = f.get<std::string>("time_profile", "constant");
      check_positive(s.source.width, "source.width");
      if (s.source.center.dim() != s.domain.dim()) {
        throw ConfigError("source.center dimension does not match the domain");
      }
      // Support (center +- 4 width) must sit strictly inside the domain.
      const double reach = 4.0 * s.source.width;
      const SpaceVec c = s.source.center;
      bool inside;
      if (s.domain.is_disk()) {
        inside = strictly_inside(s.domain, c) && distance_to_boundary(s.domain, c) > reach;
      } else {
        inside = true;
        for (int k = 0; k < s.domain.dim(); ++k) {
          SpaceVec lo = c, hi = c;
          lo[k] -= reach;
          hi[k] += reach;
          inside = inside && strictly_inside(s.domain, lo) && strictly_inside(s.domain, hi);
        }
      }
      if (!inside) throw ConfigError("source bump (center +- 4 width) touches the boundary");
    } else if (type == "manufactured") {
      s.source.kind = SourceSpec::Kind::manufactured;
      s.source.amplitude = f.get<double>("amplitude", 1.0);
      if (s.domain.is_disk()) throw ConfigError("manufactured source needs an interval or rectangle");
    } else {
      throw ConfigError("source.type: unknown family '" + type + "'");
    }
    if (s.source.time_profile != "constant" && s.source.time_profile != "linear" &&
        s.source.time_profile != "sine") {
      throw ConfigError("source.time_profile must be constant, linear or sine");
    }
    f.finish();
  }

  if (top.has("boundary_data")) {
    Fields b(top.required("boundary_data"), "boundary_data");
    const std::string type = b.get<std::string>("type");
    if (type == "zero") {
      s.boundary.kind = BoundarySpec::Kind::zero;
    } else if (type == "ramp") {
      s.boundary.kind = BoundarySpec::Kind::ramp;
      s.boundary.amplitude = b.get<double>("amplitude");
      s.boundary.rise_time = b.get<double>("rise_time");
      check_positive(s.boundary.rise_time, "boundary_data.rise_time");
    } else {
      throw ConfigError("boundary_data.type: unknown family '" + type + "'");
    }
    b.finish();
  }

  if (top.has("resolution")) {
    Fields r(top.required("resolution"), "resolution");
    ResolutionSpec& res = s.resolution;
    res.volume = r.get<int>("volume", res.volume);
    res.boundary = r.get<int>("boundary", res.boundary);
    res.time = r.get<int>("time", res.time);
    res.time_panels = r.get<int>("time_panels", res.time_panels);
    res.pde_time = r.get<int>("pde_time", res.pde_time);
    res.oracle_grid = r.get<int>("oracle_grid", res.oracle_grid);
    res.oracle_steps = r.get<int>("oracle_steps", res.oracle_steps);
    res.cascade_modes = r.get<int>("cascade_modes", res.cascade_modes);
    res.cascade_steps = r.get<int>("cascade_steps", res.cascade_steps);
    r.finish();
    for (int v : {res.volume, res.boundary, res.time_panels, res.oracle_grid, res.oracle_steps,
                  res.cascade_modes, res.cascade_steps}) {
      check_positive(v, "resolution fields");
    }
    if (res.time < 2 || res.pde_time < 2) throw ConfigError("resolution.time needs >= 2 nodes");
  }

  if (s.order.n() == 2) s.tolerances.bc = s.tolerances.interior = 5e-3;
  if (top.has("tolerances")) {
    Fields t(top.required("tolerances"), "tolerances");
    ToleranceSpec& tol = s.tolerances;
    tol.bc = t.get<double>("bc", tol.bc);
    tol.interior = t.get<double>("interior", tol.interior);
    tol.pde = t.get<double>("pde", tol.pde);
    tol.ic_slope_factor = t.get<double>("ic_slope_factor", tol.ic_slope_factor);
    tol.oracle = t.get<double>("oracle", tol.oracle);
    tol.convergence_order = t.get<double>("convergence_order", tol.convergence_order);
    t.finish();
    for (double v : {tol.bc, tol.interior, tol.pde, tol.ic_slope_factor, tol.oracle}) {
      check_positive(v, "tolerances");
    }
  }

  if (top.has("probes")) {
    Fields p(top.required("probes"), "probes");
    if (p.has("interior")) {
      const json& list = p.required("interior");
      if (!list.is_array()) throw ConfigError("probes.interior must be an array of points");
      for (const json& pt : list) s.interior_probes.push_back(parse_point(pt, "probes.interior"));
    }
    s.seed = p.get<std::uint64_t>("seed", s.seed);
    s.random_probes = p.get<int>("random", s.random_probes);
    p.finish();
  }
  if (s.interior_probes.empty()) s.interior_probes = default_probes(s.domain);
  for (const SpaceVec& p : s.interior_probes) {
    if (p.dim() != s.domain.dim() || !strictly_inside(s.domain, p)) {
      throw ConfigError("interior probe outside the domain or of the wrong dimension");
    }
  }
  check_positive(s.random_probes, "probes.random");

  if (top.has("verification")) {
    Fields v(top.required("verification"), "verification");
    s.sample_times = v.get<int>("sample_times", s.sample_times);
    s.fd_step_x = v.get<double>("fd_step_x", s.fd_step_x);
    s.fd_step_t = v.get<double>("fd_step_t", s.fd_step_t);
    s.refinement_levels = v.get<int>("refinement_levels", s.refinement_levels);
    s.allow_2d = v.get<bool>("allow_2d", s.allow_2d);
    v.finish();
    check_positive(s.sample_times, "verification.sample_times");
    check_positive(s.fd_step_x, "verification.fd_step_x");
    check_positive(s.fd_step_t, "verification.fd_step_t");
    if (s.refinement_levels < 0) throw ConfigError("verification.refinement_levels must be >= 0");
  }

  if (top.has("output")) {
    Fields o(top.required("output"), "output");
    s.report_path = o.get<std::string>("report", "");
    s.csv_path = o.get<std::string>("csv", "");
    o.finish();
  }
  top.finish();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("scenario " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

SourceField make_source(const Scenario& s) {
  const SourceSpec src = s.source;
  const double T = s.horizon;
  switch (src.kind) {
    case SourceSpec::Kind::zero:
      return SourceField::zero();
    case SourceSpec::Kind::gaussian_bump: {
      const double reach = 6.0 * src.width;
      const SpaceVec r = src.center.dim() == 1 ? SpaceVec(reach) : SpaceVec(reach, reach);
      return SourceField{[src, T](const SpaceVec& x, double t) {
                           const double d2 = (x - src.center).norm2() / (src.width * src.width);
                           return src.amplitude * std::exp(-d2) * time_profile(src.time_profile, t, T);
                         },
                         Box{src.center - r, src.center + r}, false};
    }
    case SourceSpec::Kind::manufactured: {
      const Box b = s.domain.bounding_box();
      const int dim = s.domain.dim();
      // u = A t prod sin(pi (x - lo)/L) solves the zero-data problem.
      return SourceField{[src, b, dim](const SpaceVec& x, double t) {
                           double shape = 1.0, rate = 0.0;
                           for (int k = 0; k < dim; ++k) {
                             const double w = std::numbers::pi / (b.hi[k] - b.lo[k]);
                             shape *= std::sin(w * (x[k] - b.lo[k]));
                             rate += w * w;
                           }
                           return src.amplitude * shape * (1.0 + rate * t);
                         },
                         std::nullopt, false};
    }
  }
  return SourceField::zero();
}

BoundaryFunction make_boundary_function(const Scenario& s, const BoundaryRule&) {
  const BoundarySpec b = s.boundary;
  if (b.kind == BoundarySpec::Kind::zero) return [](std::size_t, double) { return 0.0; };
  return [b](std::size_t, double t) {
    const double q = t / b.rise_time;
    return -b.amplitude * std::expm1(-q * q);
  };
}

BoundaryFunction make_boundary_rate(const Scenario& s, const BoundaryRule&) {
  const BoundarySpec b = s.boundary;
  if (b.kind == BoundarySpec::Kind::zero) return [](std::size_t, double) { return 0.0; };
  return [b](std::size_t, double t) {
    const double q = t / b.rise_time;
    return b.amplitude * 2.0 * q / b.rise_time * std::exp(-q * q);
  };
}

VolumeRule scenario_volume_rule(const Scenario& s, int level) {
  return make_volume_rule(s.domain, s.resolution.volume << level);
}

BoundaryRule scenario_boundary_rule(const Scenario& s, int level) {
  return make_boundary_rule(s.domain, s.resolution.boundary << level);
}

TimeRule scenario_time_rule(const Scenario& s, double t, int level) {
  const int nodes = s.resolution.time << level;
  if (s.resolution.time_panels == 1) return make_time_rule(t, nodes);
  return make_graded_time_rule(t, nodes, s.resolution.time_panels);
}

VerificationSetup make_verification_setup(const Scenario& s, int level,
                                          const PotentialOptions& opts) {
  return VerificationSetup{s.order,
                           make_source(s),
                           scenario_volume_rule(s, level),
                           scenario_boundary_rule(s, level),
                           scenario_time_rule(s, s.horizon, level),
                           s.horizon,
                           s.sample_times,
                           s.interior_probes,
                           s.fd_step_x,
                           s.fd_step_t,
                           s.resolution.pde_time,
                           opts};
}

std::vector<std::pair<SpaceVec, double>> random_space_time_probes(const Scenario& s) {
  std::mt19937_64 rng(s.seed);
  const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const Box b = s.domain.bounding_box();
  std::vector<std::pair<SpaceVec, double>> out;
  while (static_cast<int>(out.size()) < s.random_probes) {
    SpaceVec x = b.lo;
    for (int k = 0; k < s.domain.dim(); ++k) {
      x[k] = b.lo[k] + (0.05 + 0.9 * uniform()) * (b.hi[k] - b.lo[k]);
    }
    const double t = s.horizon * (0.05 + 0.95 * uniform());
    if (!strictly_inside(s.domain, x)) continue;
    out.emplace_back(x, t);
  }
  return out;
}

}  // namespace heatpot
