#include "heatpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatpot/gauss_legendre.hpp"

namespace heatpot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Lagrange basis values of `nodes` at x.
std::vector<double> lagrange_basis(const std::vector<double>& nodes, double x) {
  std::vector<double> basis(nodes.size(), 1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i != j) basis[i] *= (x - nodes[j]) / (nodes[i] - nodes[j]);
    }
  }
  return basis;
}

// Periodic interpolation kernel for N equispaced samples.
double dirichlet_kernel(int n, double x) {
  const double half = 0.5 * x;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-14) return 1.0;
  if (n % 2 == 0) return std::sin(n * half) * std::cos(half) / (n * s);
  return std::sin(n * half) / (n * s);
}

}  // namespace

bool Box::contains(const SpaceVec& p) const {
  for (int d = 0; d < lo.dim(); ++d) {
    if (p[d] < lo[d] || p[d] > hi[d]) return false;
  }
  return true;
}

Box Box::intersect(const Box& other) const {
  Box out = *this;
  for (int d = 0; d < lo.dim(); ++d) {
    out.lo[d] = std::max(lo[d], other.lo[d]);
    out.hi[d] = std::min(hi[d], other.hi[d]);
  }
  return out;
}

bool Box::empty() const {
  for (int d = 0; d < lo.dim(); ++d) {
    if (!(lo[d] < hi[d])) return true;
  }
  return false;
}

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
  std::visit(Overloaded{
                 [](const Interval& s) {
                   if (!(s.a < s.b)) throw ConfigError("interval requires a < b");
                 },
                 [](const Rectangle& s) {
                   if (!(s.ax < s.bx) || !(s.ay < s.by)) {
                     throw ConfigError("rectangle requires positive extent in both axes");
                   }
                 },
                 [](const Disk& s) {
                   if (!(s.radius > 0.0)) throw ConfigError("disk requires radius > 0");
                   if (s.center.dim() != 2) throw ConfigError("disk center must be 2-D");
                 },
             },
             shape_);
}

int Domain::dim() const { return is_interval() ? 1 : 2; }

Box Domain::bounding_box() const {
  return std::visit(Overloaded{
                        [](const Interval& s) { return Box{SpaceVec(s.a), SpaceVec(s.b)}; },
                        [](const Rectangle& s) {
                          return Box{SpaceVec(s.ax, s.ay), SpaceVec(s.bx, s.by)};
                        },
                        [](const Disk& s) {
                          const SpaceVec r(s.radius, s.radius);
                          return Box{s.center - r, s.center + r};
                        },
                    },
                    shape_);
}

double Domain::measure() const {
  return std::visit(Overloaded{
                        [](const Interval& s) { return s.b - s.a; },
                        [](const Rectangle& s) { return (s.bx - s.ax) * (s.by - s.ay); },
                        [](const Disk& s) { return std::numbers::pi * s.radius * s.radius; },
                    },
                    shape_);
}

double Domain::perimeter() const {
  return std::visit(Overloaded{
                        [](const Interval&) { return 2.0; },
                        [](const Rectangle& s) { return 2.0 * (s.bx - s.ax + s.by - s.ay); },
                        [](const Disk& s) { return kTwoPi * s.radius; },
                    },
                    shape_);
}

bool contains(const Domain& domain, const SpaceVec& p) {
  if (p.dim() != domain.dim()) throw ConfigError("point dimension does not match domain");
  return std::visit(Overloaded{
                        [&](const Interval& s) { return s.a <= p[0] && p[0] <= s.b; },
                        [&](const Rectangle& s) {
                          return s.ax <= p[0] && p[0] <= s.bx && s.ay <= p[1] && p[1] <= s.by;
                        },
                        [&](const Disk& s) { return (p - s.center).norm() <= s.radius; },
                    },
                    domain.shape());
}

double distance_to_boundary(const Domain& domain, const SpaceVec& p) {
  if (p.dim() != domain.dim()) throw ConfigError("point dimension does not match domain");
  return std::visit(
      Overloaded{
          [&](const Interval& s) { return std::min(std::abs(p[0] - s.a), std::abs(p[0] - s.b)); },
          [&](const Rectangle& s) {
            if (contains(domain, p)) {
              return std::min({p[0] - s.ax, s.bx - p[0], p[1] - s.ay, s.by - p[1]});
            }
            const double dx = std::max({s.ax - p[0], 0.0, p[0] - s.bx});
            const double dy = std::max({s.ay - p[1], 0.0, p[1] - s.by});
            return std::hypot(dx, dy);
          },
          [&](const Disk& s) { return std::abs((p - s.center).norm() - s.radius); },
      },
      domain.shape());
}

BoundaryRule::BoundaryRule(Domain domain, std::vector<BoundaryNode> nodes,
                           std::vector<Segment> segments)
    : domain_(std::move(domain)), nodes_(std::move(nodes)), segments_(std::move(segments)) {
  for (const Segment& seg : segments_) {
    if (seg.arc) {
      spacing_ = std::max(spacing_, kTwoPi * seg.length / seg.panels);
    } else {
      spacing_ = std::max(spacing_, seg.length / seg.panels);
    }
  }
}

int BoundaryRule::find_node(const SpaceVec& p, double tol) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if ((nodes_[i].point - p).norm() <= tol) return static_cast<int>(i);
  }
  return -1;
}

std::vector<LocalBoundaryNode> BoundaryRule::local_nodes(const SpaceVec& center, double radius,
                                                         double panel_width, int order) const {
  std::vector<LocalBoundaryNode> out;
  std::vector<double> params;
  std::vector<double> weights;
  for (const Segment& seg : segments_) {
    if (!seg.arc) {
      const SpaceVec rel = center - seg.start;
      const double along = dot(rel, seg.direction);
      const double across = dot(rel, seg.normal);
      if (std::abs(across) >= radius) continue;
      const double half = std::sqrt(radius * radius - across * across);
      const double lo = std::max(0.0, along - half);
      const double hi = std::min(seg.length, along + half);
      if (!(lo < hi)) continue;
      const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
      params.clear();
      weights.clear();
      for (int p = 0; p < count; ++p) {
        append_gauss_panel(order, lo + (hi - lo) * p / count, lo + (hi - lo) * (p + 1) / count,
                           params, weights);
      }
      const double coarse = seg.length / seg.panels;
      const GaussRule& g = gauss_legendre(seg.order);
      for (std::size_t q = 0; q < params.size(); ++q) {
        const int panel = std::clamp(static_cast<int>(params[q] / coarse), 0, seg.panels - 1);
        std::vector<double> panel_params(seg.order);
        for (int k = 0; k < seg.order; ++k) {
          panel_params[k] = coarse * (panel + 0.5 * (g.nodes[k] + 1.0));
        }
        const std::vector<double> basis = lagrange_basis(panel_params, params[q]);
        LocalBoundaryNode node{seg.start + params[q] * seg.direction, seg.normal, weights[q], {}};
        for (int k = 0; k < seg.order; ++k) {
          node.interp.emplace_back(seg.first_node + panel * seg.order + k, basis[k]);
        }
        out.push_back(std::move(node));
      }
    } else {
      const double big_r = seg.length;
      const SpaceVec rel = center - seg.start;
      const double rho = rel.norm();
      double lo = 0.0;
      double hi = kTwoPi;
      if (rho > 0.0) {
        const double c = (rho * rho + big_r * big_r - radius * radius) / (2.0 * rho * big_r);
        if (c >= 1.0) continue;
        if (c > -1.0) {
          const double theta0 = std::atan2(rel[1], rel[0]);
          const double width = std::acos(c);
          lo = theta0 - width;
          hi = theta0 + width;
        }
      } else if (big_r >= radius) {
        continue;
      }
      const double arc_len = big_r * (hi - lo);
      const int count = std::max(1, static_cast<int>(std::ceil(arc_len / panel_width)));
      params.clear();
      weights.clear();
      for (int p = 0; p < count; ++p) {
        append_gauss_panel(order, lo + (hi - lo) * p / count, lo + (hi - lo) * (p + 1) / count,
                           params, weights);
      }
      const int n = seg.panels;
      for (std::size_t q = 0; q < params.size(); ++q) {
        const double th = params[q];
        const SpaceVec dir(std::cos(th), std::sin(th));
        LocalBoundaryNode node{seg.start + big_r * dir, dir, big_r * weights[q], {}};
        node.interp.reserve(n);
        for (int k = 0; k < n; ++k) {
          node.interp.emplace_back(seg.first_node + k, dirichlet_kernel(n, th - kTwoPi * k / n));
        }
        out.push_back(std::move(node));
      }
    }
  }
  return out;
}

VolumeRule::VolumeRule(Domain domain, std::vector<VolumeNode> nodes, double panel_width, int order)
    : domain_(std::move(domain)), nodes_(std::move(nodes)), panel_width_(panel_width), order_(order) {}

TimeRule::TimeRule(double target_time, std::vector<TimeNode> nodes, Grading grading)
    : target_time_(target_time), nodes_(std::move(nodes)), grading_(grading) {}

BoundaryRule make_boundary_rule(const Domain& domain, int resolution, int order) {
  if (resolution < 1) throw ArgumentError("boundary rule resolution must be >= 1");
  std::vector<BoundaryNode> nodes;
  std::vector<BoundaryRule::Segment> segments;
  std::visit(
      Overloaded{
          [&](const Interval& s) {
            nodes.push_back({SpaceVec(s.a), SpaceVec(-1.0), 1.0});
            nodes.push_back({SpaceVec(s.b), SpaceVec(1.0), 1.0});
          },
          [&](const Rectangle& s) {
            const SpaceVec corners[4] = {SpaceVec(s.ax, s.ay), SpaceVec(s.bx, s.ay),
                                         SpaceVec(s.bx, s.by), SpaceVec(s.ax, s.by)};
            const SpaceVec normals[4] = {SpaceVec(0.0, -1.0), SpaceVec(1.0, 0.0),
                                         SpaceVec(0.0, 1.0), SpaceVec(-1.0, 0.0)};
            for (int side = 0; side < 4; ++side) {
              const SpaceVec start = corners[side];
              const SpaceVec edge = corners[(side + 1) % 4] - start;
              const double len = edge.norm();
              BoundaryRule::Segment seg;
              seg.start = start;
              seg.direction = (1.0 / len) * edge;
              seg.normal = normals[side];
              seg.length = len;
              seg.first_node = static_cast<int>(nodes.size());
              seg.panels = resolution;
              seg.order = order;
              std::vector<double> params;
              std::vector<double> weights;
              for (int p = 0; p < resolution; ++p) {
                append_gauss_panel(order, len * p / resolution, len * (p + 1) / resolution,
                                   params, weights);
              }
              for (std::size_t q = 0; q < params.size(); ++q) {
                nodes.push_back({start + params[q] * seg.direction, seg.normal, weights[q]});
              }
              segments.push_back(seg);
            }
          },
          [&](const Disk& s) {
            const int n = resolution * order;
            BoundaryRule::Segment seg;
            seg.arc = true;
            seg.start = s.center;
            seg.length = s.radius;
            seg.first_node = 0;
            seg.panels = n;
            seg.order = 1;
            for (int k = 0; k < n; ++k) {
              const double th = kTwoPi * k / n;
              const SpaceVec dir(std::cos(th), std::sin(th));
              nodes.push_back({s.center + s.radius * dir, dir, kTwoPi * s.radius / n});
            }
            segments.push_back(seg);
          },
      },
      domain.shape());
  return BoundaryRule(domain, std::move(nodes), std::move(segments));
}

VolumeRule make_volume_rule(const Domain& domain, int resolution, int order) {
  if (resolution < 1) throw ArgumentError("volume rule resolution must be >= 1");
  std::vector<VolumeNode> nodes;
  double panel_width = 0.0;
  auto axis = [&](double lo, double hi, std::vector<double>& x, std::vector<double>& w) {
    for (int p = 0; p < resolution; ++p) {
      append_gauss_panel(order, lo + (hi - lo) * p / resolution,
                         lo + (hi - lo) * (p + 1) / resolution, x, w);
    }
  };
  std::visit(Overloaded{
                 [&](const Interval& s) {
                   std::vector<double> x, w;
                   axis(s.a, s.b, x, w);
                   for (std::size_t i = 0; i < x.size(); ++i) nodes.push_back({SpaceVec(x[i]), w[i]});
                   panel_width = (s.b - s.a) / resolution;
                 },
                 [&](const Rectangle& s) {
                   std::vector<double> x, wx, y, wy;
                   axis(s.ax, s.bx, x, wx);
                   axis(s.ay, s.by, y, wy);
                   for (std::size_t i = 0; i < x.size(); ++i) {
                     for (std::size_t j = 0; j < y.size(); ++j) {
                       nodes.push_back({SpaceVec(x[i], y[j]), wx[i] * wy[j]});
                     }
                   }
                   panel_width = std::max(s.bx - s.ax, s.by - s.ay) / resolution;
                 },
                 [&](const Disk& s) {
                   std::vector<double> r, wr;
                   axis(0.0, s.radius, r, wr);
                   const int n_angle = 4 * resolution * order;
                   for (std::size_t i = 0; i < r.size(); ++i) {
                     for (int k = 0; k < n_angle; ++k) {
                       const double th = kTwoPi * (k + 0.5) / n_angle;
                       nodes.push_back({s.center + r[i] * SpaceVec(std::cos(th), std::sin(th)),
                                        wr[i] * r[i] * kTwoPi / n_angle});
                     }
                   }
                   panel_width = s.radius / resolution;
                 },
             },
             domain.shape());
  return VolumeRule(domain, std::move(nodes), panel_width, order);
}

namespace {

TimeRule time_rule_from_sigma(double t, const std::vector<double>& sigma,
                              const std::vector<double>& weights, TimeRule::Grading grading) {
  std::vector<TimeNode> nodes;
  nodes.reserve(sigma.size());
  // Descending sigma is ascending tau.
  for (std::size_t i = sigma.size(); i-- > 0;) {
    const double lag = sigma[i] * sigma[i];
    nodes.push_back({t - lag, lag, 2.0 * sigma[i] * weights[i]});
  }
  return TimeRule(t, std::move(nodes), grading);
}

}  // namespace

TimeRule make_time_rule(double t, int n) {
  if (!(t > 0.0)) throw ArgumentError("time rule requires t > 0");
  if (n < 2) throw ArgumentError("time rule requires at least 2 nodes");
  std::vector<double> sigma, weights;
  append_gauss_panel(n, 0.0, std::sqrt(t), sigma, weights);
  return time_rule_from_sigma(t, sigma, weights, {1, n, 1.0});
}

TimeRule make_graded_time_rule(double t, int nodes_per_panel, int panels) {
  if (!(t > 0.0)) throw ArgumentError("time rule requires t > 0");
  if (nodes_per_panel < 2 || panels < 1) throw ArgumentError("graded time rule too coarse");
  const double top = std::sqrt(t);
  std::vector<double> sigma, weights;
  double lo = 0.0;
  for (int p = panels - 1; p >= 0; --p) {
    const double hi = top * std::ldexp(1.0, -p);
    append_gauss_panel(nodes_per_panel, lo, hi, sigma, weights);
    lo = hi;
  }
  return time_rule_from_sigma(t, sigma, weights, {panels, nodes_per_panel, 2.0});
}

TimeRule make_time_rule_like(const TimeRule& pattern, double t) {
  const TimeRule::Grading& g = pattern.grading();
  if (g.panels == 1) return make_time_rule(t, g.nodes_per_panel);
  return make_graded_time_rule(t, g.nodes_per_panel, g.panels);
}

}  // namespace heatpot
