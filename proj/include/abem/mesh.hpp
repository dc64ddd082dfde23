#ifndef ABEM_MESH_HPP
#define ABEM_MESH_HPP

#include <iosfwd>
#include <memory>
#include <vector>

#include "abem/geometry.hpp"

namespace abem {

struct Patch {
  std::size_t center;               // element or node id
  std::vector<std::size_t> members; // element ids
};

/// Partition of a Curve into affine line segments. Immutable; refinement
/// produces a new mesh. Every element lies inside a single curve edge, and
/// curve vertices stay mesh nodes under refinement.
class Mesh {
 public:
  /// node_s: ascending node arclengths. Open curve: first 0, last length().
  /// Closed curve: first 0, one node per element (elements wrap).
  Mesh(std::shared_ptr<const Curve> curve, std::vector<double> node_s,
       std::vector<int> generations);

  const Curve& curve() const { return *curve_; }
  std::shared_ptr<const Curve> curve_ptr() const { return curve_; }

  std::size_t n_elements() const { return generation_.size(); }
  std::size_t n_nodes() const { return node_s_.size(); }

  double node_arclength(std::size_t z) const { return node_s_[z]; }
  Point2 node_point(std::size_t z) const;
  bool is_tip_node(std::size_t z) const;
  /// True if the node sits on a curve vertex flagged as corner.
  bool is_corner_node(std::size_t z) const { return node_corner_[z]; }

  double element_begin(std::size_t e) const { return node_s_[e]; }
  double element_end(std::size_t e) const;
  double element_length(std::size_t e) const { return element_end(e) - element_begin(e); }
  int generation(std::size_t e) const { return generation_[e]; }
  std::size_t element_edge(std::size_t e) const { return elem_edge_[e]; }
  Point2 element_point_begin(std::size_t e) const { return curve_->point_at(element_begin(e)); }
  Point2 element_point_end(std::size_t e) const;
  Point2 element_tangent(std::size_t e) const { return curve_->edge_tangent(elem_edge_[e]); }
  Point2 element_normal(std::size_t e) const { return curve_->edge_normal(elem_edge_[e]); }
  /// Affine map [0,1] -> element in arclength.
  double map_to_arclength(std::size_t e, double t) const {
    return element_begin(e) + t * element_length(e);
  }

  std::size_t node_begin_of(std::size_t e) const { return e; }
  std::size_t node_end_of(std::size_t e) const {
    return curve_->closed() ? (e + 1) % n_elements() : e + 1;
  }
  /// Neighbouring element ids (1 or 2 entries; wraps on closed curves).
  std::vector<std::size_t> neighbors(std::size_t e) const;
  Patch element_patch(std::size_t e) const;
  Patch node_patch(std::size_t z) const;
  /// Elements adjacent to node z (1 at tips, else 2; order: left, right).
  std::vector<std::size_t> node_elements(std::size_t z) const;

  double total_length() const { return curve_->length(); }
  /// Max length ratio over neighbouring element pairs; >= 1.
  double mesh_ratio() const;
  double max_element_length() const;

  /// True if every maximal corner-free run of elements has >= 2 members.
  bool components_have_two_elements() const;

  void save(std::ostream& os) const;
  static Mesh load(std::istream& is);

 private:
  std::shared_ptr<const Curve> curve_;
  std::vector<double> node_s_;
  std::vector<int> generation_;
  std::vector<std::size_t> elem_edge_;
  std::vector<bool> node_corner_;
};

/// Uniform subdivision of every curve edge into elements_per_edge pieces.
/// Throws SmoothComponentTooCoarse if a corner-free component would end up
/// with a single element.
Mesh build_mesh(std::shared_ptr<const Curve> curve, std::size_t elements_per_edge);

/// Per-edge subdivision counts. The two-elements-per-component rule is only
/// enforced when require_two_per_component is set (the weakly-singular
/// estimator needs it; the hyper-singular one does not).
Mesh build_mesh(std::shared_ptr<const Curve> curve, const std::vector<std::size_t>& counts,
                bool require_two_per_component = true);

}  // namespace abem

#endif
