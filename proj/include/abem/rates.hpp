#ifndef ABEM_RATES_HPP
#define ABEM_RATES_HPP

#include <cstddef>
#include <vector>

namespace abem {

/// Least-squares slope of log(y) against log(x) over the trailing
/// ceil(tail_fraction * size) samples. Pairs with y <= 0 are dropped first.
/// Throws TooFewRows when fewer than two usable samples remain.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                     double tail_fraction = 0.5);

/// Iterated Aitken delta-squared extrapolation of a monotonically increasing
/// sequence (Galerkin energies on nested meshes). Throws NonMonotoneInput on
/// a decreasing step and TooFewRows below three samples. The result is never
/// below the last input value.
double aitken_extrapolate(const std::vector<double>& seq);

}  // namespace abem

#endif
