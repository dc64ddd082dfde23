#ifndef ABEM_QUADRATURE_HPP
#define ABEM_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace abem {

/// Gauss-Legendre rule on [0,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [0,1]; cached per n.
const GaussRule& gauss_rule(std::size_t n);

/// Integrate f over [a,b] with an n-point Gauss rule.
template <typename F>
double gauss_integrate(F&& f, double a, double b, const GaussRule& rule) {
  double sum = 0.0;
  const double len = b - a;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(a + rule.nodes[i] * len);
  return sum * len;
}

/// Integrate f over [a,b] with subintervals geometrically graded towards the
/// endpoint `singular` (which must be a or b). levels controls the depth; each
/// subinterval uses the given Gauss rule. Handles integrable endpoint
/// singularities (log type) to ~1e-12 of the interval scale.
template <typename F>
double graded_integrate(F&& f, double a, double b, double singular, double ratio,
                        std::size_t levels, const GaussRule& rule) {
  const bool at_a = singular <= 0.5 * (a + b);
  double sum = 0.0;
  double far = at_a ? b : a;
  const double s = at_a ? a : b;
  for (std::size_t m = 0; m + 1 < levels; ++m) {
    const double near = s + (far - s) * ratio;
    if (near == far || near == s) break;  // cannot split further in doubles
    sum += gauss_integrate(f, std::min(far, near), std::max(far, near), rule);
    far = near;
  }
  // The last panel touches the singularity; once it shrinks to rounding size,
  // quadrature nodes would collapse onto it, so truncate instead (the omitted
  // mass of an integrable singularity over ~1e-13*|s| is negligible).
  if (std::abs(far - s) > 1e-13 * std::abs(s))
    sum += gauss_integrate(f, std::min(far, s), std::max(far, s), rule);
  return sum;
}

}  // namespace abem

#endif
