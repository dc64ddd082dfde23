#include "abem/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace abem {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Second antiderivative of log|u|: Phi''(u) = log|u|.
double phi2(double u) {
  if (u == 0.0) return 0.0;
  return 0.5 * u * u * (std::log(std::abs(u)) - 1.5);
}

// int int_{[p1,p2]x[q1,q2]} log|s-t| ds dt for collinear coordinates.
double collinear_log_double_integral(double p1, double p2, double q1, double q2) {
  return phi2(p2 - q1) + phi2(p1 - q2) - phi2(p2 - q2) - phi2(p1 - q1);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Segment make_segment(Point2 a, Point2 b) {
  Segment s;
  s.a = a;
  s.b = b;
  s.length = norm(b - a);
  s.tangent = (1.0 / s.length) * (b - a);
  s.normal = {s.tangent.y, -s.tangent.x};
  return s;
}

double log_inner_integral(const Segment& seg, Point2 x) {
  const double u = dot(x - seg.a, seg.tangent);
  const double q = dot(x - seg.a, seg.normal);
  auto anti = [&](double t) {
    const double w = t - u;
    const double r2 = w * w + q * q;
    double val = -2.0 * w;
    if (r2 > 0.0) val += w * std::log(r2);
    if (q != 0.0) val += 2.0 * q * std::atan(w / q);
    return val;
  };
  return 0.5 * (anti(seg.length) - anti(0.0));
}

double dlp_inner_affine(const Segment& seg, Point2 x, double alpha, double beta) {
  const double u = dot(x - seg.a, seg.tangent);
  const double q = dot(x - seg.a, seg.normal);
  if (q == 0.0) return 0.0;
  const double i0 = std::atan((seg.length - u) / q) - std::atan(-u / q);
  const double r2b = (seg.length - u) * (seg.length - u) + q * q;
  const double r2a = u * u + q * q;
  if (r2a == 0.0 || r2b == 0.0) return 0.0;
  const double i1 = u * i0 + 0.5 * q * std::log(r2b / r2a);
  return (alpha * i0 + beta * i1) / kTwoPi;
}

double dlp_segment_potential(const Segment& seg, Point2 y, Point2 m) {
  const double u = dot(y - seg.a, seg.tangent);
  const double q = dot(y - seg.a, seg.normal);
  const double r2a = u * u + q * q;
  const double r2b = (seg.length - u) * (seg.length - u) + q * q;
  // y rounded exactly onto an endpoint: the log singularity is integrable,
  // so any finite value works under quadrature.
  if (r2a == 0.0 || r2b == 0.0) return 0.0;
  // (x-y).m = (t-u)(tau.m) - q(nu.m) with x = seg.a + t*tau splits the
  // integral into a log and an arctangent part.
  const double tm = dot(seg.tangent, m);
  const double nm = dot(seg.normal, m);
  double val = 0.0;
  if (tm != 0.0) val += tm * 0.5 * std::log(r2b / r2a);
  if (nm != 0.0 && q != 0.0)
    val -= nm * (std::atan((seg.length - u) / q) - std::atan(-u / q));
  return val / kTwoPi;
}

SegmentProximity segment_proximity(const Segment& p, const Segment& q) {
  const Point2 d1 = p.b - p.a;
  const Point2 d2 = q.b - q.a;
  const Point2 r = p.a - q.a;
  const double a = dot(d1, d1), e = dot(d2, d2);
  const double b = dot(d1, d2), c = dot(d1, r), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  const double denom = a * e - b * b;
  if (denom > 1e-14 * a * e) s = clamp01((b * f - c * e) / denom);
  t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = clamp01(-c / a);
  } else if (t > 1.0) {
    t = 1.0;
    s = clamp01((b - c) / a);
  }
  const Point2 cp = p.a + s * d1;
  const Point2 cq = q.a + t * d2;
  return SegmentProximity{s * p.length, t * q.length, norm(cp - cq)};
}

double slp_pair_integral(const Segment& tj, const Segment& tk,
                         const KernelQuadratureConfig& cfg) {
  const double scale = std::max(tj.length, tk.length);
  const double tol = 1e-13 * std::max(1.0, scale);

  const bool same = (norm(tj.a - tk.a) < tol && norm(tj.b - tk.b) < tol) ||
                    (norm(tj.a - tk.b) < tol && norm(tj.b - tk.a) < tol);
  if (same) {
    const double l = tj.length;
    return -(l * l * (std::log(l) - 1.5)) / kTwoPi;
  }

  const GaussRule& rule = gauss_rule(cfg.gauss_order);
  const SegmentProximity prox = segment_proximity(tj, tk);

  // Far pairs: the kernel is smooth, and plain tensor Gauss keeps the result
  // accurate relative to the pair scale l_j*l_k. The closed forms are only
  // used close up; at large separations their terms cancel to roundoff.
  if (prox.distance >= cfg.analytic_distance_threshold * scale) {
    // Half the base order per axis is ample at separation >= 2 * max length.
    const GaussRule& far = gauss_rule(std::max<std::size_t>(4, cfg.gauss_order / 2));
    double integral = 0.0;
    for (std::size_t i = 0; i < far.nodes.size(); ++i) {
      const Point2 x = tj.a + (far.nodes[i] * tj.length) * tj.tangent;
      double inner = 0.0;
      for (std::size_t m = 0; m < far.nodes.size(); ++m) {
        const Point2 y = tk.a + (far.nodes[m] * tk.length) * tk.tangent;
        inner += far.weights[m] * std::log(norm(x - y));
      }
      integral += far.weights[i] * inner;
    }
    return -integral * tj.length * tk.length / kTwoPi;
  }

  const bool parallel = std::abs(cross(tj.tangent, tk.tangent)) < 1e-13;
  const bool collinear = parallel && std::abs(dot(tk.a - tj.a, tj.normal)) < tol;
  if (collinear) {
    const double q1 = dot(tk.a - tj.a, tj.tangent);
    const double q2 = dot(tk.b - tj.a, tj.tangent);
    return -collinear_log_double_integral(0.0, tj.length, std::min(q1, q2),
                                          std::max(q1, q2)) / kTwoPi;
  }

  auto outer = [&](double s) {
    return log_inner_integral(tk, tj.a + s * tj.tangent);
  };
  const double s_star = prox.s;
  const double edge_tol = 1e-14 * tj.length;
  double integral = 0.0;
  if (s_star > edge_tol)
    integral += graded_integrate(outer, 0.0, s_star, s_star,
                                 cfg.near_singular_subdivision_ratio,
                                 cfg.graded_levels, rule);
  if (s_star < tj.length - edge_tol)
    integral += graded_integrate(outer, s_star, tj.length, s_star,
                                 cfg.near_singular_subdivision_ratio,
                                 cfg.graded_levels, rule);
  return -integral / kTwoPi;
}

}  // namespace abem
