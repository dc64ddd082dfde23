#include "abem/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "abem/errors.hpp"

namespace abem {

namespace {

// Proper-crossing test between segments (a,b) and (c,d), excluding shared endpoints.
bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto orient = [](Point2 p, Point2 q, Point2 r) { return cross(q - p, r - p); };
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 &&
         o3 != 0 && o4 != 0;
}

}  // namespace

Curve::Curve(std::vector<Point2> vertices, bool closed, std::set<std::size_t> extra_corners)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t nv = vertices_.size();
  if (nv < 2 || (closed_ && nv < 3)) throw DegenerateCurve("curve needs at least 2 (open) or 3 (closed) vertices");

  const std::size_t ne = closed_ ? nv : nv - 1;
  cum_length_.resize(ne + 1);
  tangent_.resize(ne);
  cum_length_[0] = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    const Point2 a = vertices_[e];
    const Point2 b = vertices_[(e + 1) % nv];
    const double len = norm(b - a);
    if (len == 0.0) throw DegenerateCurve("zero-length edge at vertex " + std::to_string(e));
    cum_length_[e + 1] = cum_length_[e] + len;
    tangent_[e] = (1.0 / len) * (b - a);
  }

  // Simplicity: no proper crossing between non-adjacent edges.
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = i + 1; j < ne; ++j) {
      const bool adjacent = (j == i + 1) || (closed_ && i == 0 && j == ne - 1);
      if (adjacent) continue;
      if (segments_cross(vertices_[i], vertices_[(i + 1) % nv], vertices_[j],
                         vertices_[(j + 1) % nv]))
        throw std::invalid_argument("curve is not simple: edges " + std::to_string(i) +
                                    " and " + std::to_string(j) + " intersect");
    }
  }

  corner_.assign(nv, false);
  for (std::size_t v = 0; v < nv; ++v) {
    const bool interior = closed_ || (v > 0 && v + 1 < nv);
    if (!interior) continue;
    const Point2 t_in = tangent_[(v + ne - 1) % ne];
    const Point2 t_out = tangent_[v % ne];
    const double angle = std::atan2(std::abs(cross(t_in, t_out)), dot(t_in, t_out));
    if (angle >= kCornerAngleTol || dot(t_in, t_out) < 0) corner_[v] = true;
  }
  for (std::size_t v : extra_corners) {
    if (v >= nv) throw std::invalid_argument("corner index out of range");
    corner_[v] = true;
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (corner_[v]) corner_set_.insert(v);
}

std::size_t Curve::edge_of(double s) const {
  const auto it = std::upper_bound(cum_length_.begin(), cum_length_.end(), s);
  std::size_t e = (it == cum_length_.begin()) ? 0 : std::size_t(it - cum_length_.begin()) - 1;
  return std::min(e, n_edges() - 1);
}

Point2 Curve::point_at(double s) const {
  const std::size_t e = edge_of(s);
  const double local = s - cum_length_[e];
  const double len = cum_length_[e + 1] - cum_length_[e];
  // Evaluate from the nearest vertex: keeps points close to a vertex (where
  // benchmark data can be singular) on the correct ray instead of drowning in
  // the cancellation noise of the long lever arm.
  if (local <= 0.5 * len) return vertices_[e] + local * tangent_[e];
  return vertices_[(e + 1) % vertices_.size()] + (local - len) * tangent_[e];
}

}  // namespace abem
