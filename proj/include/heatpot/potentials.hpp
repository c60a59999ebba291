#pragma once

// Heat potentials of the iterated kernels: the volume potential of a source,
// its traces (diamond^k u), their normal derivatives, and single/double layer
// potentials of boundary densities.

#include <functional>
#include <optional>
#include <vector>

#include "heatpot/geometry.hpp"
#include "heatpot/summation.hpp"

namespace heatpot {

/// Source term f(x, t). Callers assert Hoelder continuity of f on the closed
/// cylinder; it is not checked. `support` bounds where f may be nonzero and
/// lets the sums skip empty regions.
struct SourceField {
  std::function<double(const SpaceVec&, double)> sampler;
  std::optional<Box> support;
  bool identically_zero = false;

  double operator()(const SpaceVec& x, double t) const { return sampler(x, t); }

  static SourceField zero();
};

/// Values of a density on boundary nodes x time nodes.
class BoundaryDensity {
 public:
  BoundaryDensity() = default;
  BoundaryDensity(std::size_t nodes, std::size_t times, double fill = 0.0)
      : nodes_(nodes), times_(times), values_(nodes * times, fill) {}

  std::size_t nodes() const { return nodes_; }
  std::size_t times() const { return times_; }
  double& at(std::size_t node, std::size_t time) { return values_[node * times_ + time]; }
  double at(std::size_t node, std::size_t time) const { return values_[node * times_ + time]; }
  bool all_zero() const;

  /// Tabulates g(node, tau) on the rules' grid.
  static BoundaryDensity sample(const BoundaryRule& brule, const TimeRule& trule,
                                const std::function<double(std::size_t, double)>& g);

 private:
  std::size_t nodes_ = 0;
  std::size_t times_ = 0;
  std::vector<double> values_;
};

struct PotentialOptions {
  Backend backend = Backend::openmp;
  /// Kernel support radius in units of sqrt(t - tau); exp(-w^2/4) is dropped.
  double window = 12.0;
};

/// u(x,t) = int_0^t int_Q eps_{m,n}(x - xi, t - tau) f(xi, tau) dxi dtau.
double volume_potential(const KernelOrder& order, const SourceField& f, const VolumeRule& vrule,
                        const TimeRule& trule, const SpaceVec& x, double t,
                        const PotentialOptions& opts = {});

/// Inner spatial integral int_Q eps(x - xi, lag) f(xi, tau) dxi at one time slice.
/// Slices whose kernel is narrower than the rule's panels are integrated on a
/// local tensor rule around x, clipped to the domain.
double volume_slice(const KernelOrder& order, const SourceField& f, const VolumeRule& vrule,
                    const SpaceVec& x, double tau, double lag, const PotentialOptions& opts = {});

/// diamond^k u: the volume potential of order m - k.
double potential_trace(int k, const KernelOrder& order, const SourceField& f,
                       const VolumeRule& vrule, const TimeRule& trule, const SpaceVec& x,
                       double t, const PotentialOptions& opts = {});

/// Normal derivative of diamond^k u at a boundary point, by differentiating
/// under the integral sign.
double potential_trace_normal_derivative(int k, const KernelOrder& order, const SourceField& f,
                                         const VolumeRule& vrule, const TimeRule& trule,
                                         const SpaceVec& x_b, const SpaceVec& normal, double t,
                                         const PotentialOptions& opts = {});

/// int_0^t int_dQ eps_{j,n}(x - xi, t - tau) density(xi, tau) dS dtau.
double single_layer(int j, const BoundaryDensity& density, const BoundaryRule& brule,
                    const TimeRule& trule, const SpaceVec& x, double t,
                    const PotentialOptions& opts = {});

/// int_0^t int_dQ d eps_{j,n}(x - xi, t - tau)/d n_xi density(xi, tau) dS dtau.
/// With on_boundary the direct sum at a boundary node is returned; no jump
/// term is added here.
double double_layer(int j, const BoundaryDensity& density, const BoundaryRule& brule,
                    const TimeRule& trule, const SpaceVec& x, double t, bool on_boundary,
                    const PotentialOptions& opts = {});

}  // namespace heatpot
