#pragma once

// Dirichlet Green functions of the first-order heat operator on intervals and
// rectangles (method of images), the boundary term they generate and the
// resulting solution formula for m = 1.

#include "heatpot/transparent_bc.hpp"

namespace heatpot {

struct GreenEvalParams {
  double truncation_tol = 1e-12;  // stop once the next image pair is below this
  int max_terms = 64;             // image pairs before giving up
};

/// sum_k eps(x - xi - 2kL, s) - eps(x + xi - 2a - 2kL, s) on [a, b], L = b - a.
/// Throws TruncationError if max_terms pairs do not reach the tolerance.
double interval_green(double x, double xi, double s, const Interval& interval,
                      const GreenEvalParams& params = {});

/// d/d xi of interval_green.
double interval_green_dxi(double x, double xi, double s, const Interval& interval,
                          const GreenEvalParams& params = {});

/// Product of the two interval factors.
double rectangle_green(const SpaceVec& x, const SpaceVec& xi, double s, const Rectangle& rect,
                       const GreenEvalParams& params = {});

/// Exterior normal derivative dG(x, xi, s)/dn_xi at a boundary point xi_b.
/// Nonpositive for interior x: G vanishes on the boundary and is positive inside.
double green_normal_derivative(const SpaceVec& x, const SpaceVec& xi_b, const SpaceVec& normal,
                               double s, const Domain& domain,
                               const GreenEvalParams& params = {});

/// sum_tau sum_xi w dG(x, xi, t - tau)/dn_xi phi(xi, tau). Its boundary values
/// are -phi.
double poisson_boundary_term(const BoundaryDensity& phi, const BoundaryRule& brule,
                             const TimeRule& trule, const SpaceVec& x, double t,
                             const GreenEvalParams& params = {},
                             const PotentialOptions& opts = {});

/// First-order volume potential of f plus the boundary term of phi.
double solve_m1(const SourceField& f, const BoundaryDensity& phi, const VolumeRule& vrule,
                const BoundaryRule& brule, const TimeRule& trule, const SpaceVec& x, double t,
                const GreenEvalParams& params = {}, const PotentialOptions& opts = {});

/// Normal derivative of the boundary term at an interval endpoint, from the
/// time derivative of phi:
///   sum_q n_p n_q int_0^t -(sum_k eps(r1_k, s) + eps(r2_k, s)) phi_q'(t - s) ds.
double poisson_boundary_flux(const BoundaryFunction& phi_rate, const BoundaryRule& brule,
                             const TimeRule& trule, std::size_t node, double t,
                             const GreenEvalParams& params = {});

/// Cauchy traces of the solve_m1 solution on an interval: u = V - phi and
/// d_n u = d_n V + flux of the boundary term.
CauchyTraces solve_m1_traces(const SourceField& f, const BoundaryFunction& phi,
                             const BoundaryFunction& phi_rate, const VolumeRule& vrule,
                             const BoundaryRule& brule, const TimeRule& trule,
                             const GreenEvalParams& params = {},
                             const PotentialOptions& opts = {});

}  // namespace heatpot
