#include "heatpot/greens.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace heatpot {

namespace {

const KernelOrder kHeat1(1, 1);

double heat1(double r, double s) { return iterated_kernel(kHeat1, SpaceVec(r), s); }

// Sums term(r1, r2) over image pairs k = 0, +-1, +-2, ... until the next pair
// is a priori below the tolerance.
template <class Term>
double image_sum(double x, double xi, double s, const Interval& iv, const GreenEvalParams& params,
                 Term&& term) {
  if (!(s > 0.0)) throw DomainError("Green function requires s > 0");
  if (!(params.truncation_tol > 0.0) || params.max_terms < 1) {
    throw ConfigError("Green function truncation parameters must be positive");
  }
  const double L = iv.b - iv.a;
  double total = term(x - xi, x + xi - 2.0 * iv.a);
  for (int k = 1;; ++k) {
    // Pairs beyond k - 1 sit at distance >= 2(k-1)L from x.
    if (heat1(2.0 * (k - 1) * L, s) < params.truncation_tol && k > 1) break;
    if (k > params.max_terms) {
      throw TruncationError("image series did not reach tolerance " +
                            std::to_string(params.truncation_tol) + " within " +
                            std::to_string(params.max_terms) + " terms");
    }
    const double shift = 2.0 * k * L;
    total += term(x - xi - shift, x + xi - 2.0 * iv.a - shift);
    total += term(x - xi + shift, x + xi - 2.0 * iv.a + shift);
  }
  return total;
}

void check_closed(double v, double lo, double hi, const char* what) {
  const double tol = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
  if (v < lo - tol || v > hi + tol) throw ArgumentError(std::string(what) + " outside the domain");
}

}  // namespace

double interval_green(double x, double xi, double s, const Interval& iv,
                      const GreenEvalParams& params) {
  check_closed(x, iv.a, iv.b, "x");
  check_closed(xi, iv.a, iv.b, "xi");
  return image_sum(x, xi, s, iv, params,
                   [&](double r1, double r2) { return heat1(r1, s) - heat1(r2, s); });
}

double interval_green_dxi(double x, double xi, double s, const Interval& iv,
                          const GreenEvalParams& params) {
  check_closed(x, iv.a, iv.b, "x");
  check_closed(xi, iv.a, iv.b, "xi");
  return image_sum(x, xi, s, iv, params, [&](double r1, double r2) {
    return (r1 * heat1(r1, s) + r2 * heat1(r2, s)) / (2.0 * s);
  });
}

double rectangle_green(const SpaceVec& x, const SpaceVec& xi, double s, const Rectangle& rc,
                       const GreenEvalParams& params) {
  const Interval ix{rc.ax, rc.bx}, iy{rc.ay, rc.by};
  return interval_green(x[0], xi[0], s, ix, params) * interval_green(x[1], xi[1], s, iy, params);
}

double green_normal_derivative(const SpaceVec& x, const SpaceVec& xi_b, const SpaceVec& normal,
                               double s, const Domain& domain, const GreenEvalParams& params) {
  if (x.dim() != domain.dim() || xi_b.dim() != domain.dim() || normal.dim() != domain.dim()) {
    throw ConfigError("Green normal derivative: dimension mismatch");
  }
  if (distance_to_boundary(domain, xi_b) > 1e-10 * (1.0 + xi_b.norm()) || !contains(domain, xi_b)) {
    throw ArgumentError("Green normal derivative needs xi on the boundary");
  }
  if (domain.is_interval()) {
    const Interval& iv = std::get<Interval>(domain.shape());
    return normal[0] * interval_green_dxi(x[0], xi_b[0], s, iv, params);
  }
  if (domain.is_rectangle()) {
    const Rectangle& rc = std::get<Rectangle>(domain.shape());
    const Interval ix{rc.ax, rc.bx}, iy{rc.ay, rc.by};
    double value = 0.0;
    if (normal[0] != 0.0) {
      value += normal[0] * interval_green_dxi(x[0], xi_b[0], s, ix, params) *
               interval_green(x[1], xi_b[1], s, iy, params);
    }
    if (normal[1] != 0.0) {
      value += normal[1] * interval_green(x[0], xi_b[0], s, ix, params) *
               interval_green_dxi(x[1], xi_b[1], s, iy, params);
    }
    return value;
  }
  throw ConfigError("Green functions are available for Interval and Rectangle only");
}

double poisson_boundary_term(const BoundaryDensity& phi, const BoundaryRule& brule,
                             const TimeRule& trule, const SpaceVec& x, double t,
                             const GreenEvalParams& params, const PotentialOptions& opts) {
  const Domain& domain = brule.domain();
  if (phi.nodes() != brule.size() || phi.times() != trule.size()) {
    throw ConfigError("boundary data does not match the boundary and time rules");
  }
  if (!contains(domain, x) || distance_to_boundary(domain, x) <= 1e-10 * (1.0 + x.norm())) {
    throw ArgumentError("boundary term requires a point strictly inside the domain");
  }
  if (std::abs(trule.target_time() - t) > 1e-13 * std::max(1.0, t)) {
    throw ArgumentError("time rule target differs from the evaluation time");
  }
  if (phi.all_zero()) return 0.0;
  const auto& nodes = trule.nodes();
  const auto& bnodes = brule.nodes();
  return ordered_sum(opts.backend, nodes.size(), [&](std::size_t q) {
    double total = 0.0;
    for (std::size_t i = 0; i < bnodes.size(); ++i) {
      const double value = phi.at(i, q);
      if (value == 0.0) continue;
      total += bnodes[i].weight *
               green_normal_derivative(x, bnodes[i].point, bnodes[i].normal, nodes[q].lag, domain,
                                       params) *
               value;
    }
    return nodes[q].weight * total;
  });
}

double solve_m1(const SourceField& f, const BoundaryDensity& phi, const VolumeRule& vrule,
                const BoundaryRule& brule, const TimeRule& trule, const SpaceVec& x, double t,
                const GreenEvalParams& params, const PotentialOptions& opts) {
  const KernelOrder order(1, vrule.domain().dim());
  return volume_potential(order, f, vrule, trule, x, t, opts) +
         poisson_boundary_term(phi, brule, trule, x, t, params, opts);
}

double poisson_boundary_flux(const BoundaryFunction& phi_rate, const BoundaryRule& brule,
                             const TimeRule& trule, std::size_t node, double t,
                             const GreenEvalParams& params) {
  if (!brule.domain().is_interval()) {
    throw ConfigError("boundary-term flux is implemented for Interval only");
  }
  if (node >= brule.size()) throw ArgumentError("boundary node index out of range");
  if (std::abs(trule.target_time() - t) > 1e-13 * std::max(1.0, t)) {
    throw ArgumentError("time rule target differs from the evaluation time");
  }
  const Interval& iv = std::get<Interval>(brule.domain().shape());
  const auto& bn = brule.nodes();
  const double xp = bn[node].point[0];
  double total = 0.0;
  for (const TimeNode& tn : trule.nodes()) {
    double inner = 0.0;
    for (std::size_t q = 0; q < bn.size(); ++q) {
      const double rate = phi_rate(q, tn.tau);
      if (rate == 0.0) continue;
      const double images = image_sum(xp, bn[q].point[0], tn.lag, iv, params,
                                      [&](double r1, double r2) {
                                        return heat1(r1, tn.lag) + heat1(r2, tn.lag);
                                      });
      inner -= bn[node].normal[0] * bn[q].normal[0] * images * rate;
    }
    total += tn.weight * inner;
  }
  return total;
}

CauchyTraces solve_m1_traces(const SourceField& f, const BoundaryFunction& phi,
                             const BoundaryFunction& phi_rate, const VolumeRule& vrule,
                             const BoundaryRule& brule, const TimeRule& trule,
                             const GreenEvalParams& params, const PotentialOptions& opts) {
  const KernelOrder order(1, 1);
  if (!brule.domain().is_interval()) throw ConfigError("solve_m1_traces supports Interval only");
  CauchyTraces traces = extract_traces(order, f, vrule, brule, trule, opts);
  const std::size_t times = trule.size();
  for (std::size_t i = 0; i < brule.size(); ++i) {
    for (std::size_t q = 0; q <= times; ++q) {
      const double tau = q < times ? trule.nodes()[q].tau : trule.target_time();
      const TimeRule rule = q < times ? make_time_rule_like(trule, tau) : trule;
      const double value = -phi(i, tau);
      const double flux = poisson_boundary_flux(phi_rate, brule, rule, i, tau, params);
      if (q < times) {
        traces.dirichlet[0].at(i, q) += value;
        traces.neumann[0].at(i, q) += flux;
      } else {
        traces.dirichlet_now[0][i] += value;
        traces.neumann_now[0][i] += flux;
      }
    }
  }
  return traces;
}

}  // namespace heatpot
