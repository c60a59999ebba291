#pragma once

// Reference domains and the quadrature rules built on them.

#include <utility>
#include <variant>
#include <vector>

#include "heatpot/kernel.hpp"

namespace heatpot {

struct Interval {
  double a;
  double b;
};

struct Rectangle {
  double ax;
  double bx;
  double ay;
  double by;
};

struct Disk {
  SpaceVec center;
  double radius;
};

/// Axis-aligned box [lo, hi] in 1 or 2 dimensions.
struct Box {
  SpaceVec lo;
  SpaceVec hi;

  bool contains(const SpaceVec& p) const;
  Box intersect(const Box& other) const;
  bool empty() const;
};

class Domain {
 public:
  using Shape = std::variant<Interval, Rectangle, Disk>;

  /// Throws ConfigError for non-positive extents.
  explicit Domain(Shape shape);

  const Shape& shape() const { return shape_; }
  int dim() const;
  Box bounding_box() const;
  double measure() const;
  double perimeter() const;

  bool is_interval() const { return std::holds_alternative<Interval>(shape_); }
  bool is_rectangle() const { return std::holds_alternative<Rectangle>(shape_); }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }

 private:
  Shape shape_;
};

/// Closed-set membership.
bool contains(const Domain& domain, const SpaceVec& p);

/// Unsigned distance from p to the boundary.
double distance_to_boundary(const Domain& domain, const SpaceVec& p);

struct BoundaryNode {
  SpaceVec point;
  SpaceVec normal;  // outward unit normal
  double weight;
};

/// A boundary sample produced by local refinement: position, normal, weight and
/// the interpolation weights expressing a nodal density at this sample.
struct LocalBoundaryNode {
  SpaceVec point;
  SpaceVec normal;
  double weight;
  std::vector<std::pair<int, double>> interp;
};

/// Boundary quadrature. Interval: the two endpoints with unit weight. Rectangle:
/// composite Gauss-Legendre panels on each side (corners are never nodes). Disk:
/// equispaced trapezoidal nodes.
class BoundaryRule {
 public:
  struct Segment {
    bool arc = false;
    SpaceVec start;       // line segment start, or arc center
    SpaceVec direction;   // unit tangent for a line
    SpaceVec normal;      // outward normal for a line
    double length = 0.0;  // line length, or arc radius
    int first_node = 0;
    int panels = 0;       // Gauss panels for a line, node count for an arc
    int order = 0;
  };

  BoundaryRule(Domain domain, std::vector<BoundaryNode> nodes, std::vector<Segment> segments);

  const Domain& domain() const { return domain_; }
  const std::vector<BoundaryNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Largest distance between neighbouring nodes along the boundary (0 for n=1).
  double spacing() const { return spacing_; }

  /// Index of the node equal to p within tol, or -1.
  int find_node(const SpaceVec& p, double tol = 1e-12) const;

  /// Resamples the part of the boundary within `radius` of `center` with Gauss
  /// panels no wider than `panel_width`. Densities are interpolated from the
  /// nodes (Lagrange within a panel on lines, trigonometric on the disk).
  std::vector<LocalBoundaryNode> local_nodes(const SpaceVec& center, double radius,
                                             double panel_width, int order = 8) const;

 private:
  Domain domain_;
  std::vector<BoundaryNode> nodes_;
  std::vector<Segment> segments_;
  double spacing_ = 0.0;
};

struct VolumeNode {
  SpaceVec point;
  double weight;
};

class VolumeRule {
 public:
  VolumeRule(Domain domain, std::vector<VolumeNode> nodes, double panel_width, int order);

  const Domain& domain() const { return domain_; }
  const std::vector<VolumeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  /// Largest panel edge; the spatial scale the rule resolves.
  double panel_width() const { return panel_width_; }
  int order() const { return order_; }

 private:
  Domain domain_;
  std::vector<VolumeNode> nodes_;
  double panel_width_;
  int order_;
};

struct TimeNode {
  double tau;
  double lag;  // t - tau, stored without cancellation
  double weight;
};

/// Quadrature on (0, t) in the variable sigma = sqrt(t - tau), which absorbs
/// (t - tau)^{-1/2} endpoint behaviour. Nodes are sorted by increasing tau.
class TimeRule {
 public:
  struct Grading {
    int panels = 1;            // geometric panels in sigma, refined toward sigma = 0
    int nodes_per_panel = 0;
    double ratio = 1.0;        // width ratio between consecutive panels
  };

  TimeRule(double target_time, std::vector<TimeNode> nodes, Grading grading);

  double target_time() const { return target_time_; }
  const std::vector<TimeNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const Grading& grading() const { return grading_; }

 private:
  double target_time_;
  std::vector<TimeNode> nodes_;
  Grading grading_;
};

BoundaryRule make_boundary_rule(const Domain& domain, int resolution, int order = 8);
VolumeRule make_volume_rule(const Domain& domain, int resolution, int order = 8);

/// Single Gauss-Legendre panel in sigma on (0, sqrt(t)).
TimeRule make_time_rule(double t, int nodes);

/// `panels` geometric panels in sigma, each halving toward sigma = 0, so the
/// smallest panel is sqrt(t) * 2^{-(panels-1)} wide. Used near the boundary
/// where kernels vary on the scale of the distance to it.
TimeRule make_graded_time_rule(double t, int nodes_per_panel, int panels);

/// A rule with the same layout as `pattern`, built for target time t.
TimeRule make_time_rule_like(const TimeRule& pattern, double t);

}  // namespace heatpot
