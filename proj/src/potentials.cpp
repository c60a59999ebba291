#include "heatpot/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatpot/gauss_legendre.hpp"

namespace heatpot {

namespace {

void check_target_time(const TimeRule& trule, double t) {
  if (!(t > 0.0)) throw ArgumentError("potential evaluation requires t > 0");
  if (std::abs(trule.target_time() - t) > 1e-13 * std::max(1.0, t)) {
    throw ArgumentError("time rule was built for t=" + std::to_string(trule.target_time()) +
                        ", evaluation requested at t=" + std::to_string(t));
  }
}

bool box_inside_disk(const Disk& disk, const Box& box) {
  const SpaceVec corners[4] = {box.lo, SpaceVec(box.hi[0], box.lo[1]), box.hi,
                               SpaceVec(box.lo[0], box.hi[1])};
  return std::all_of(std::begin(corners), std::end(corners), [&](const SpaceVec& c) {
    return (c - disk.center).norm() < disk.radius;
  });
}

// Tensor Gauss rule on a box with panels no wider than `width`.
void local_tensor_rule(const Box& box, double width, int order, std::vector<SpaceVec>& points,
                       std::vector<double>& weights) {
  const int dim = box.lo.dim();
  std::vector<double> axis_x[2], axis_w[2];
  for (int d = 0; d < dim; ++d) {
    const double extent = box.hi[d] - box.lo[d];
    const int panels = std::max(1, static_cast<int>(std::ceil(extent / width)));
    for (int p = 0; p < panels; ++p) {
      append_gauss_panel(order, box.lo[d] + extent * p / panels,
                         box.lo[d] + extent * (p + 1) / panels, axis_x[d], axis_w[d]);
    }
  }
  if (dim == 1) {
    for (std::size_t i = 0; i < axis_x[0].size(); ++i) {
      points.emplace_back(axis_x[0][i]);
      weights.push_back(axis_w[0][i]);
    }
    return;
  }
  for (std::size_t i = 0; i < axis_x[0].size(); ++i) {
    for (std::size_t j = 0; j < axis_x[1].size(); ++j) {
      points.emplace_back(axis_x[0][i], axis_x[1][j]);
      weights.push_back(axis_w[0][i] * axis_w[1][j]);
    }
  }
}

// int_Q kernel(x - xi) f(xi, tau) dxi for a kernel concentrated within
// opts.window * sqrt(lag) of x.
template <class Kernel>
double slice_integral(const SourceField& f, const VolumeRule& vrule, const SpaceVec& x,
                      double tau, double lag, const PotentialOptions& opts, Kernel&& kernel) {
  if (f.identically_zero || !(lag > 0.0)) return 0.0;
  const Domain& domain = vrule.domain();
  const double root = std::sqrt(lag);
  const double radius = opts.window * root;
  const SpaceVec reach = domain.dim() == 1 ? SpaceVec(radius) : SpaceVec(radius, radius);
  Box window = Box{x - reach, x + reach}.intersect(domain.bounding_box());
  if (f.support) window = window.intersect(*f.support);
  if (window.empty()) return 0.0;

  bool local = root < vrule.panel_width();
  if (local && domain.is_disk()) local = box_inside_disk(std::get<Disk>(domain.shape()), window);

  double total = 0.0;
  if (local) {
    std::vector<SpaceVec> points;
    std::vector<double> weights;
    local_tensor_rule(window, std::min(vrule.panel_width(), 2.0 * root), vrule.order(), points,
                      weights);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double k = kernel(x - points[i]);
      if (k != 0.0) total += weights[i] * k * f(points[i], tau);
    }
  } else {
    for (const VolumeNode& node : vrule.nodes()) {
      if (!window.contains(node.point)) continue;
      const double k = kernel(x - node.point);
      if (k != 0.0) total += node.weight * k * f(node.point, tau);
    }
  }
  return total;
}

}  // namespace

SourceField SourceField::zero() {
  return SourceField{[](const SpaceVec&, double) { return 0.0; }, std::nullopt, true};
}

bool BoundaryDensity::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

BoundaryDensity BoundaryDensity::sample(const BoundaryRule& brule, const TimeRule& trule,
                                        const std::function<double(std::size_t, double)>& g) {
  BoundaryDensity d(brule.size(), trule.size());
  for (std::size_t i = 0; i < brule.size(); ++i) {
    for (std::size_t k = 0; k < trule.size(); ++k) d.at(i, k) = g(i, trule.nodes()[k].tau);
  }
  return d;
}

double volume_slice(const KernelOrder& order, const SourceField& f, const VolumeRule& vrule,
                    const SpaceVec& x, double tau, double lag, const PotentialOptions& opts) {
  return slice_integral(f, vrule, x, tau, lag, opts,
                        [&](const SpaceVec& r) { return iterated_kernel(order, r, lag); });
}

double volume_potential(const KernelOrder& order, const SourceField& f, const VolumeRule& vrule,
                        const TimeRule& trule, const SpaceVec& x, double t,
                        const PotentialOptions& opts) {
  if (x.dim() != order.n() || vrule.domain().dim() != order.n()) {
    throw ConfigError("volume potential: dimension mismatch between order, rule and point");
  }
  check_target_time(trule, t);
  if (f.identically_zero) return 0.0;
  const auto& nodes = trule.nodes();
  return ordered_sum(opts.backend, nodes.size(), [&](std::size_t k) {
    const TimeNode& node = nodes[k];
    return node.weight * volume_slice(order, f, vrule, x, node.tau, node.lag, opts);
  });
}

double potential_trace(int k, const KernelOrder& order, const SourceField& f,
                       const VolumeRule& vrule, const TimeRule& trule, const SpaceVec& x,
                       double t, const PotentialOptions& opts) {
  if (k < 0 || k >= order.m()) {
    throw ArgumentError("trace index k=" + std::to_string(k) + " outside [0, m-1]");
  }
  return volume_potential(order.lowered(k), f, vrule, trule, x, t, opts);
}

double potential_trace_normal_derivative(int k, const KernelOrder& order, const SourceField& f,
                                         const VolumeRule& vrule, const TimeRule& trule,
                                         const SpaceVec& x_b, const SpaceVec& normal, double t,
                                         const PotentialOptions& opts) {
  if (k < 0 || k >= order.m()) {
    throw ArgumentError("trace index k=" + std::to_string(k) + " outside [0, m-1]");
  }
  const Domain& domain = vrule.domain();
  if (x_b.dim() != domain.dim() || normal.dim() != domain.dim()) {
    throw ConfigError("normal derivative: dimension mismatch");
  }
  const double scale = 1.0 + x_b.norm();
  if (!contains(domain, x_b) || distance_to_boundary(domain, x_b) > 1e-10 * scale) {
    throw ArgumentError("normal derivative requested at a point not on the boundary");
  }
  check_target_time(trule, t);
  if (f.identically_zero) return 0.0;
  const KernelOrder lowered = order.lowered(k);
  const auto& nodes = trule.nodes();
  return ordered_sum(opts.backend, nodes.size(), [&](std::size_t q) {
    const TimeNode& node = nodes[q];
    const double lag = node.lag;
    return node.weight *
           slice_integral(f, vrule, x_b, node.tau, lag, opts, [&](const SpaceVec& r) {
             return -dot(r, normal) / (2.0 * lag) * iterated_kernel(lowered, r, lag);
           });
  });
}

namespace {

template <class Kernel>
double layer_sum(const BoundaryDensity& density, const BoundaryRule& brule, const TimeRule& trule,
                 const SpaceVec& x, double t, const PotentialOptions& opts, Kernel&& kernel) {
  if (density.nodes() != brule.size() || density.times() != trule.size()) {
    throw ConfigError("boundary density does not match the boundary and time rules");
  }
  if (x.dim() != brule.domain().dim()) throw ConfigError("layer potential: dimension mismatch");
  check_target_time(trule, t);
  if (density.all_zero()) return 0.0;
  const auto& nodes = trule.nodes();
  const auto& bnodes = brule.nodes();
  const bool two_d = brule.domain().dim() == 2;
  return ordered_sum(opts.backend, nodes.size(), [&](std::size_t k) {
    const double lag = nodes[k].lag;
    const double root = std::sqrt(lag);
    double total = 0.0;
    if (two_d && root < brule.spacing()) {
      const auto local = brule.local_nodes(x, opts.window * root, std::min(brule.spacing(), root));
      for (const LocalBoundaryNode& node : local) {
        const double kv = kernel(x - node.point, lag, node.normal);
        if (kv == 0.0) continue;
        double mu = 0.0;
        for (const auto& [idx, w] : node.interp) mu += w * density.at(idx, k);
        total += node.weight * kv * mu;
      }
    } else {
      for (std::size_t i = 0; i < bnodes.size(); ++i) {
        const double mu = density.at(i, k);
        if (mu == 0.0) continue;
        total += bnodes[i].weight * kernel(x - bnodes[i].point, lag, bnodes[i].normal) * mu;
      }
    }
    return nodes[k].weight * total;
  });
}

}  // namespace

double single_layer(int j, const BoundaryDensity& density, const BoundaryRule& brule,
                    const TimeRule& trule, const SpaceVec& x, double t,
                    const PotentialOptions& opts) {
  const KernelOrder order(j, brule.domain().dim());
  return layer_sum(density, brule, trule, x, t, opts,
                   [&](const SpaceVec& r, double lag, const SpaceVec&) {
                     return iterated_kernel(order, r, lag);
                   });
}

double double_layer(int j, const BoundaryDensity& density, const BoundaryRule& brule,
                    const TimeRule& trule, const SpaceVec& x, double t, bool on_boundary,
                    const PotentialOptions& opts) {
  const KernelOrder order(j, brule.domain().dim());
  if (on_boundary && brule.find_node(x, 1e-12 * (1.0 + x.norm())) < 0) {
    throw ArgumentError("on-boundary double layer requested at a point that is not a node");
  }
  return layer_sum(density, brule, trule, x, t, opts,
                   [&](const SpaceVec& r, double lag, const SpaceVec& normal) {
                     return kernel_normal_derivative(order, r, lag, normal);
                   });
}

}  // namespace heatpot
