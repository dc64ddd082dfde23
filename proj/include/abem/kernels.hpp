#ifndef ABEM_KERNELS_HPP
#define ABEM_KERNELS_HPP

#include "abem/geometry.hpp"
#include "abem/quadrature.hpp"

namespace abem {

struct KernelQuadratureConfig {
  std::size_t gauss_order = 16;
  double near_singular_subdivision_ratio = 0.5;
  /// Pairs closer than this multiple of the larger element length get the
  /// graded outer rule instead of plain Gauss.
  double analytic_distance_threshold = 2.0;
  std::size_t graded_levels = 48;
};

/// Affine segment with unit tangent and normal (tangent rotated by -pi/2).
struct Segment {
  Point2 a;
  Point2 b;
  double length;
  Point2 tangent;
  Point2 normal;
};

Segment make_segment(Point2 a, Point2 b);

/// int_T log|x-y| dGamma(y), closed form.
double log_inner_integral(const Segment& seg, Point2 x);

/// int_T dn(y)G(x-y) (alpha + beta*t) dt with t the arclength from seg.a and
/// dn(y)G(x-y) = (1/2pi)(x-y).n(y)/|x-y|^2. Closed form; zero when x lies on
/// the segment's line.
double dlp_inner_affine(const Segment& seg, Point2 x, double alpha, double beta);

/// int_seg dn(y)G(x-y) ds(x) for a fixed point y with unit normal m = n(y):
/// the adjoint double-layer potential of the characteristic function of seg.
/// Closed form; the integration variable x runs over the segment while the
/// normal stays at y.
double dlp_segment_potential(const Segment& seg, Point2 y, Point2 m);

/// Closest-approach parameters (arclengths from the respective a-endpoints)
/// and distance between two segments.
struct SegmentProximity {
  double s;  // on first segment
  double t;  // on second segment
  double distance;
};
SegmentProximity segment_proximity(const Segment& p, const Segment& q);

/// Galerkin entry of the single-layer operator for P0 characteristic
/// functions: -(1/2pi) int_{Tj} int_{Tk} log|x-y| dy dx. Identical and
/// collinear pairs use closed forms; other pairs combine the analytic inner
/// integral with (graded) Gauss outer quadrature.
double slp_pair_integral(const Segment& tj, const Segment& tk,
                         const KernelQuadratureConfig& cfg = {});

}  // namespace abem

#endif
