#ifndef ABEM_GEOMETRY_HPP
#define ABEM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

namespace abem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Angle tolerance below which two consecutive segment directions count as equal.
inline constexpr double kCornerAngleTol = 1e-12;

/// A simple polygonal curve, open (an arc with two tips) or closed (a polygon
/// boundary). Closed curves are expected in counter-clockwise orientation, so
/// the outward normal of an edge with unit tangent t is (t.y, -t.x).
class Curve {
 public:
  /// Throws DegenerateCurve for zero-length edges, std::invalid_argument for
  /// self-intersecting polylines. Corners are detected from tangent jumps;
  /// extra_corners may declare additional vertices as corners.
  Curve(std::vector<Point2> vertices, bool closed,
        std::set<std::size_t> extra_corners = {});

  bool closed() const { return closed_; }
  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_edges() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  bool is_corner_vertex(std::size_t v) const { return corner_[v]; }
  const std::set<std::size_t>& corner_vertices() const { return corner_set_; }

  double length() const { return cum_length_.back(); }
  double edge_length(std::size_t e) const { return cum_length_[e + 1] - cum_length_[e]; }
  /// Arclength of the first vertex of edge e.
  double edge_begin(std::size_t e) const { return cum_length_[e]; }
  Point2 edge_tangent(std::size_t e) const { return tangent_[e]; }
  /// Outward normal for CCW closed curves; for open curves the tangent rotated by -pi/2.
  Point2 edge_normal(std::size_t e) const { return {tangent_[e].y, -tangent_[e].x}; }

  /// Edge containing arclength s (edges own their left endpoint).
  std::size_t edge_of(double s) const;
  Point2 point_at(double s) const;

 private:
  std::vector<Point2> vertices_;
  bool closed_;
  std::vector<bool> corner_;
  std::set<std::size_t> corner_set_;
  std::vector<double> cum_length_;  // size n_edges+1
  std::vector<Point2> tangent_;     // per edge, unit
};

}  // namespace abem

#endif
