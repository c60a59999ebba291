#pragma once

// Nonlocal boundary conditions satisfied by the volume potential of an
// iterated heat operator: boundary traces, residuals and the full verification.

#include <functional>
#include <vector>

#include "heatpot/potentials.hpp"

namespace heatpot {

/// Boundary records (diamond^j u, d_n diamond^j u), j = 0..m-1, on the grid
/// brule x trule, together with their values at the rule's target time.
struct CauchyTraces {
  KernelOrder order;
  BoundaryRule brule;
  TimeRule trule;
  std::vector<BoundaryDensity> dirichlet;
  std::vector<BoundaryDensity> neumann;
  std::vector<std::vector<double>> dirichlet_now;  // [j][node] at trule.target_time()
  std::vector<std::vector<double>> neumann_now;

  double time() const { return trule.target_time(); }

  static CauchyTraces zero(const KernelOrder& order, const BoundaryRule& brule,
                           const TimeRule& trule);
};

/// Boundary function phi(node, t).
using BoundaryFunction = std::function<double(std::size_t, double)>;

/// Traces of the order-m volume potential of f. Each history entry at tau_q is
/// evaluated with a time rule shaped like `trule` and targeted at tau_q.
CauchyTraces extract_traces(const KernelOrder& order, const SourceField& f,
                            const VolumeRule& vrule, const BoundaryRule& brule,
                            const TimeRule& trule, const PotentialOptions& opts = {});

/// I_u^k at a boundary node:
///   -diamond^k u / 2 + sum_{i=0}^{m-k-1} (DL_{m-i-k}[diamond^{m-i-1} u] - SL_{m-i-k}[d_n diamond^{m-i-1} u]).
double bc_residual(int k, const CauchyTraces& traces, const SpaceVec& x_b, double t,
                   const PotentialOptions& opts = {});

/// The same bracket with k = 0 at an interior point, without the jump term.
double interior_identity_residual(const CauchyTraces& traces, const SpaceVec& x, double t,
                                  const PotentialOptions& opts = {});

/// m = 1 only: -u/2 + DL_1[u] - SL_1[d_n u] - phi at a boundary node.
double bc_residual_inhomogeneous(const CauchyTraces& traces, const BoundaryFunction& phi,
                                 const SpaceVec& x_b, double t,
                                 const PotentialOptions& opts = {});

struct VerificationSetup {
  KernelOrder order;
  SourceField f;
  VolumeRule vrule;
  BoundaryRule brule;
  TimeRule time_pattern;  // layout reused at every sample time
  double horizon;
  int sample_times = 8;
  std::vector<SpaceVec> interior_probes;
  double fd_step_x = 1e-3;
  double fd_step_t = 1e-3;
  int pde_time_nodes = 48;  // the finite-difference check amplifies quadrature error
  PotentialOptions opts;
};

struct ResidualReport {
  std::vector<double> sample_times;
  std::vector<double> bc_max;    // per k, raw
  std::vector<double> bc_mean;   // per k, raw
  std::vector<double> scale;     // per k, max |diamond^k u| over boundary nodes and probes
  std::vector<std::vector<double>> bc_by_time;  // [sample][k], max over nodes, raw
  std::vector<double> interior_by_time;         // [sample], max over probes, raw
  double bc_normalized = 0.0;    // max_k bc_max[k] / scale[k]
  double interior_max = 0.0;     // raw
  double interior_normalized = 0.0;
  double pde_max = 0.0;          // raw |diamond u_{m-1} - f|
  double pde_normalized = 0.0;   // divided by max |f| over the probes
  double ic_slope = 0.0;
  std::size_t boundary_nodes = 0;
  std::size_t time_nodes = 0;
  std::size_t volume_nodes = 0;
};

ResidualReport verify_theorem1(const VerificationSetup& setup);

}  // namespace heatpot
