#include "heatpot/transparent_bc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatpot/oracle.hpp"

namespace heatpot {

CauchyTraces CauchyTraces::zero(const KernelOrder& order, const BoundaryRule& brule,
                                const TimeRule& trule) {
  const auto m = static_cast<std::size_t>(order.m());
  CauchyTraces traces{order,
                      brule,
                      trule,
                      std::vector<BoundaryDensity>(m, BoundaryDensity(brule.size(), trule.size())),
                      std::vector<BoundaryDensity>(m, BoundaryDensity(brule.size(), trule.size())),
                      std::vector<std::vector<double>>(m, std::vector<double>(brule.size(), 0.0)),
                      std::vector<std::vector<double>>(m, std::vector<double>(brule.size(), 0.0))};
  return traces;
}

CauchyTraces extract_traces(const KernelOrder& order, const SourceField& f,
                            const VolumeRule& vrule, const BoundaryRule& brule,
                            const TimeRule& trule, const PotentialOptions& opts) {
  if (vrule.domain().dim() != order.n() || brule.domain().dim() != order.n()) {
    throw ConfigError("trace extraction: rule dimension differs from the kernel order");
  }
  CauchyTraces traces = CauchyTraces::zero(order, brule, trule);
  if (f.identically_zero) return traces;

  const std::size_t m = order.m();
  const std::size_t nodes = brule.size();
  const std::size_t times = trule.size() + 1;  // last column is the target time
  std::vector<TimeRule> rules;
  rules.reserve(times);
  for (const TimeNode& node : trule.nodes()) rules.push_back(make_time_rule_like(trule, node.tau));
  rules.push_back(trule);

  PotentialOptions inner = opts;
  inner.backend = Backend::serial;
  for_each(opts.backend, m * nodes * times, [&](std::size_t flat) {
    const std::size_t q = flat % times;
    const std::size_t i = (flat / times) % nodes;
    const int j = static_cast<int>(flat / (times * nodes));
    const TimeRule& rule = rules[q];
    const BoundaryNode& b = brule.nodes()[i];
    const double t = rule.target_time();
    const double value = potential_trace(j, order, f, vrule, rule, b.point, t, inner);
    const double flux =
        potential_trace_normal_derivative(j, order, f, vrule, rule, b.point, b.normal, t, inner);
    if (q + 1 == times) {
      traces.dirichlet_now[j][i] = value;
      traces.neumann_now[j][i] = flux;
    } else {
      traces.dirichlet[j].at(i, q) = value;
      traces.neumann[j].at(i, q) = flux;
    }
  });
  return traces;
}

namespace {

// sum_{i=0}^{m-k-1} DL_{m-i-k}[diamond^{m-i-1} u] - SL_{m-i-k}[d_n diamond^{m-i-1} u]
double layer_bracket(int k, const CauchyTraces& traces, const SpaceVec& x, double t,
                     bool on_boundary, const PotentialOptions& opts) {
  const int m = traces.order.m();
  double total = 0.0;
  for (int i = 0; i <= m - k - 1; ++i) {
    const int j = m - i - k;
    const std::size_t density = m - i - 1;
    total += double_layer(j, traces.dirichlet[density], traces.brule, traces.trule, x, t,
                          on_boundary, opts);
    total -= single_layer(j, traces.neumann[density], traces.brule, traces.trule, x, t, opts);
  }
  return total;
}

int boundary_node_index(const CauchyTraces& traces, const SpaceVec& x_b) {
  const int idx = traces.brule.find_node(x_b, 1e-12 * (1.0 + x_b.norm()));
  if (idx < 0) throw ArgumentError("boundary residual requested away from the boundary nodes");
  return idx;
}

}  // namespace

double bc_residual(int k, const CauchyTraces& traces, const SpaceVec& x_b, double t,
                   const PotentialOptions& opts) {
  if (k < 0 || k >= traces.order.m()) {
    throw ArgumentError("residual index k=" + std::to_string(k) + " outside [0, m-1]");
  }
  const int idx = boundary_node_index(traces, x_b);
  return -0.5 * traces.dirichlet_now[k][idx] + layer_bracket(k, traces, x_b, t, true, opts);
}

double interior_identity_residual(const CauchyTraces& traces, const SpaceVec& x, double t,
                                  const PotentialOptions& opts) {
  const Domain& domain = traces.brule.domain();
  if (!contains(domain, x) || distance_to_boundary(domain, x) <= 1e-10 * (1.0 + x.norm())) {
    throw ArgumentError("interior identity requires a point strictly inside the domain");
  }
  return layer_bracket(0, traces, x, t, false, opts);
}

double bc_residual_inhomogeneous(const CauchyTraces& traces, const BoundaryFunction& phi,
                                 const SpaceVec& x_b, double t, const PotentialOptions& opts) {
  if (traces.order.m() != 1) throw ArgumentError("inhomogeneous condition is stated for m = 1");
  const int idx = boundary_node_index(traces, x_b);
  if (phi(idx, 0.0) != 0.0) throw ArgumentError("boundary data must vanish at t = 0");
  return bc_residual(0, traces, x_b, t, opts) - phi(idx, t);
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ResidualReport verify_theorem1(const VerificationSetup& s) {
  const int m = s.order.m();
  const auto mk = static_cast<std::size_t>(m);
  if (s.sample_times < 1) throw ConfigError("verification needs at least one sample time");
  ResidualReport report;
  report.bc_max.assign(mk, 0.0);
  report.bc_mean.assign(mk, 0.0);
  report.scale.assign(mk, 0.0);
  report.boundary_nodes = s.brule.size();
  report.time_nodes = s.time_pattern.size();
  report.volume_nodes = s.vrule.size();

  PotentialOptions serial = s.opts;
  serial.backend = Backend::serial;
  const std::size_t nodes = s.brule.size();
  const std::size_t probes = s.interior_probes.size();

  for (int it = 1; it <= s.sample_times; ++it) {
    const double t = s.horizon * it / s.sample_times;
    report.sample_times.push_back(t);
    const TimeRule trule = make_time_rule_like(s.time_pattern, t);
    const CauchyTraces traces = extract_traces(s.order, s.f, s.vrule, s.brule, trule, s.opts);

    std::vector<double> bc(mk * nodes, 0.0);
    for_each(s.opts.backend, mk * nodes, [&](std::size_t flat) {
      const int k = static_cast<int>(flat / nodes);
      bc[flat] = bc_residual(k, traces, s.brule.nodes()[flat % nodes].point, t, serial);
    });
    std::vector<double> interior(probes, 0.0), probe_values(mk * probes, 0.0);
    for_each(s.opts.backend, probes, [&](std::size_t p) {
      interior[p] = interior_identity_residual(traces, s.interior_probes[p], t, serial);
      for (int k = 0; k < m; ++k) {
        probe_values[k * probes + p] =
            potential_trace(k, s.order, s.f, s.vrule, trule, s.interior_probes[p], t, serial);
      }
    });

    std::vector<double> row(mk, 0.0);
    for (std::size_t k = 0; k < mk; ++k) {
      for (std::size_t i = 0; i < nodes; ++i) {
        const double r = std::abs(bc[k * nodes + i]);
        row[k] = std::max(row[k], r);
        report.bc_max[k] = std::max(report.bc_max[k], r);
        report.bc_mean[k] += r / static_cast<double>(nodes * s.sample_times);
        report.scale[k] = std::max(report.scale[k], std::abs(traces.dirichlet_now[k][i]));
      }
      for (std::size_t p = 0; p < probes; ++p) {
        report.scale[k] = std::max(report.scale[k], std::abs(probe_values[k * probes + p]));
      }
    }
    report.bc_by_time.push_back(row);
    double worst = 0.0;
    for (double r : interior) worst = std::max(worst, std::abs(r));
    report.interior_by_time.push_back(worst);
    report.interior_max = std::max(report.interior_max, worst);
  }

  for (std::size_t k = 0; k < mk; ++k) {
    if (report.scale[k] > 0.0) {
      report.bc_normalized = std::max(report.bc_normalized, report.bc_max[k] / report.scale[k]);
    }
  }
  if (report.scale[0] > 0.0) report.interior_normalized = report.interior_max / report.scale[0];

  // diamond (diamond^{m-1} u) = f, with diamond^{m-1} u the first-order potential.
  if (!s.f.identically_zero && probes > 0) {
    const KernelOrder first(1, s.order.n());
    const SpaceTimeSampler u = [&](const SpaceVec& x, double t) {
      return volume_potential(first, s.f, s.vrule, make_time_rule(t, s.pde_time_nodes), x, t,
                              serial);
    };
    std::vector<double> pde(probes * report.sample_times.size(), 0.0);
    std::vector<double> fmax(pde.size(), 0.0);
    for_each(s.opts.backend, pde.size(), [&](std::size_t flat) {
      const SpaceVec& x = s.interior_probes[flat % probes];
      const double t = report.sample_times[flat / probes];
      if (t <= 2.0 * s.fd_step_t) return;
      const double value = fd_heat_operator_residual(u, 1, x, t, s.fd_step_x, s.fd_step_t);
      pde[flat] = std::abs(value - s.f(x, t));
      fmax[flat] = std::abs(s.f(x, t));
    });
    report.pde_max = *std::max_element(pde.begin(), pde.end());
    const double scale = *std::max_element(fmax.begin(), fmax.end());
    if (scale > 0.0) report.pde_normalized = report.pde_max / scale;
  }

  // Initial behaviour: u ~ C t^m at the probe where f is largest.
  if (!s.f.identically_zero && probes > 0) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < probes; ++p) {
      if (std::abs(s.f(s.interior_probes[p], 0.0)) > std::abs(s.f(s.interior_probes[best], 0.0))) {
        best = p;
      }
    }
    std::vector<double> lt, lu;
    for (int j = 0; j < 4; ++j) {
      const double t = s.horizon * 1e-3 * std::ldexp(1.0, j);
      const double u = volume_potential(s.order, s.f, s.vrule, make_time_rule_like(s.time_pattern, t),
                                        s.interior_probes[best], t, s.opts);
      if (u == 0.0) continue;
      lt.push_back(std::log(t));
      lu.push_back(std::log(std::abs(u)));
    }
    if (lt.size() >= 2) report.ic_slope = least_squares_slope(lt, lu);
  }
  return report;
}

}  // namespace heatpot
