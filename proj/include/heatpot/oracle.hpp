#pragma once

// Independent reference computations: the cascade construction of the
// order-m potential, a Crank-Nicolson solver for the first-order problem and
// finite-difference application of the heat operator.

#include <functional>
#include <optional>
#include <vector>

#include "heatpot/potentials.hpp"

namespace heatpot {

using SpaceTimeSampler = std::function<double(const SpaceVec&, double)>;

/// (d/dt - Laplacian)^m u at (x, t) with m-fold nested central differences.
/// Throws ArgumentError if the stencil reaches t <= 0 or leaves `region`.
double fd_heat_operator_residual(const SpaceTimeSampler& u, int m, const SpaceVec& x, double t,
                                 double h_x, double h_t,
                                 const std::optional<Box>& region = std::nullopt);

struct CascadeOptions {
  double padding = 0.0;   // box padding around Q; 0 selects 8 sqrt(t)
  int modes = 256;        // Fourier modes per axis on the padded box
  int steps = 400;        // time steps on (0, t); a half-step run is extrapolated in
};

/// w_1 = first-order potential of f over Q; w_j = first-order potential of
/// w_{j-1} over a padded periodic box; returns w_m(x, t). Each stage uses
/// only the first-order heat semigroup, never eps_{m,n} itself.
double cascade_volume_potential(int m, const SourceField& f, const Domain& domain,
                                const SpaceVec& x, double t, const CascadeOptions& opts = {});

/// The same construction evaluated at several points sharing one target time.
std::vector<double> cascade_volume_potential(int m, const SourceField& f, const Domain& domain,
                                             const std::vector<SpaceVec>& xs, double t,
                                             const CascadeOptions& opts = {});

/// Dirichlet data g(x, t) at boundary points.
using DirichletData = std::function<double(const SpaceVec&, double)>;

struct GridSolution {
  int dim = 1;
  std::vector<double> xs;  // grid nodes along x, boundary included
  std::vector<double> ys;  // along y for rectangles
  std::vector<double> ts;  // time levels, ts[0] = 0
  std::vector<double> values;  // [level][iy][ix], boundary included

  double at(std::size_t level, std::size_t ix, std::size_t iy = 0) const {
    return values[(level * (dim == 2 ? ys.size() : 1) + iy) * xs.size() + ix];
  }
  /// Bilinear in space at a stored time level.
  double interpolate(std::size_t level, const SpaceVec& x) const;
  /// Index of the level closest to t.
  std::size_t level_of(double t) const;
};

/// u_t - Laplacian u = f, u = g on the boundary, u(., 0) = 0, on an Interval
/// (Crank-Nicolson) or Rectangle (Peaceman-Rachford ADI); nx intervals per
/// axis and nt time steps up to T. Every time level is stored.
GridSolution crank_nicolson_m1(const SourceField& f, const DirichletData& g,
                               const Domain& domain, int nx, int nt, double T);

}  // namespace heatpot
