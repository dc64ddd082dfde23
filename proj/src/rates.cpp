#include "abem/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abem/errors.hpp"

namespace abem {

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                     double tail_fraction) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y sizes differ");
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw std::invalid_argument("tail_fraction must be in (0,1]");
  const std::size_t keep = std::size_t(std::ceil(tail_fraction * double(x.size())));
  const std::size_t first = x.size() - keep;

  std::vector<double> lx, ly;
  for (std::size_t i = first; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;  // also drops NaN
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const std::size_t m = lx.size();
  if (m < 2) throw TooFewRows("need at least two positive samples to fit a rate");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(m);
  my /= double(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("all abscissae coincide");
  return sxy / sxx;
}

double aitken_extrapolate(const std::vector<double>& seq) {
  if (seq.size() < 3) throw TooFewRows("need at least three samples to extrapolate");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i + 1] < seq[i] - 1e-12 * std::max(std::abs(seq[i]), 1.0))
      throw NonMonotoneInput("sequence is not monotonically increasing");

  const double last = seq.back();
  std::vector<double> a = seq;
  double best = last;
  double corr = std::numeric_limits<double>::infinity();
  while (a.size() >= 3) {
    std::vector<double> b;
    for (std::size_t k = 0; k + 2 < a.size(); ++k) {
      const double d1 = a[k + 1] - a[k];
      const double d2 = a[k + 2] - a[k + 1];
      const double den = d2 - d1;
      // Skip steps where cancellation leaves no signal.
      if (std::abs(den) < 1e-13 * std::max(std::abs(a[k + 2]), 1.0)) continue;
      b.push_back(a[k + 2] - d2 * d2 / den);
    }
    if (b.empty()) break;
    const double cand = b.back();
    const double c = std::abs(cand - best);
    // Each pass squares the convergence on clean data; on noisy tails the
    // corrections start growing instead, which is the cue to stop.
    if (cand < last || c > corr) break;
    best = cand;
    corr = c;
    a = std::move(b);
  }
  return std::max(best, last);
}

}  // namespace abem
