#include "abem/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "abem/errors.hpp"
#include "abem/rates.hpp"
#include "abem/refinement.hpp"
#include "abem/solve.hpp"

namespace abem {

namespace {

std::string fmt(const char* format, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double mean(const double* begin, const double* end) {
  return std::accumulate(begin, end, 0.0) / double(end - begin);
}

}  // namespace

CheckResult reliability_check(const std::vector<double>& energies,
                              const std::vector<double>& etas, double max_spread) {
  if (energies.size() < 3 || etas.size() + 1 != energies.size())
    throw TooFewRows("reliability check needs at least two uniform refinements");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t l = 0; l + 1 < energies.size(); ++l) {
    const double diff = std::sqrt(std::max(0.0, energies[l + 1] - energies[l]));
    if (diff <= 0.0 || etas[l] <= 0.0)
      return {"reliability-ratio", false, "degenerate level difference or estimator"};
    const double r = diff / etas[l];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {"reliability-ratio", hi / lo <= max_spread,
          fmt("ratio spread %.6g (bound %.6g)", hi / lo, max_spread)};
}

CheckResult efficiency_check(double reference, const std::vector<double>& energies,
                             const std::vector<double>& etas, double bound) {
  double worst = 0.0;
  for (std::size_t l = 0; l < etas.size() && l < energies.size(); ++l) {
    const double err2 = reference - energies[l];
    if (err2 <= 0.0)
      return {"efficiency-ratio", false, "reference energy not above a level energy"};
    worst = std::max(worst, etas[l] / std::sqrt(err2));
  }
  return {"efficiency-ratio", worst <= bound, fmt("max ratio %.6g (bound %.6g)", worst, bound)};
}

CheckResult saturation_check(double reference, const std::vector<double>& energies) {
  for (std::size_t l = 0; l + 1 < energies.size(); ++l) {
    const double e0 = reference - energies[l];
    const double e1 = reference - energies[l + 1];
    if (!(e1 > 0.0) || !(e1 < e0))
      return {"saturation", false,
              fmt("error did not decrease: %.6g -> %.6g", std::sqrt(std::max(0.0, e0)),
                  std::sqrt(std::max(0.0, e1)))};
  }
  return {"saturation", true, "energy error strictly decreasing"};
}

CheckResult estimator_reduction_check(const std::vector<double>& etas, double theta) {
  if (etas.size() < 8) throw TooFewRows("estimator reduction check needs at least 8 levels");
  const std::vector<double> alpha = estimator_reduction_offsets(etas, theta);
  const std::size_t quarter = std::max<std::size_t>(1, alpha.size() / 4);
  const double head = mean(alpha.data(), alpha.data() + quarter);
  const double tail = mean(alpha.data() + (alpha.size() - quarter), alpha.data() + alpha.size());
  if (!(tail < head || (head == 0.0 && tail == 0.0)))
    return {"estimator-reduction", false, fmt("offset means %.6g -> %.6g", head, tail)};
  for (std::size_t l = std::max<std::size_t>(1, etas.size() / 4); l + 1 < etas.size(); ++l)
    if (etas[l + 1] > etas[l] * (1.0 + 1e-9))
      return {"estimator-reduction", false,
              fmt("estimator increased after transient: %.6g -> %.6g", etas[l], etas[l + 1])};
  return {"estimator-reduction", true, fmt("offset means %.6g -> %.6g", head, tail)};
}

CheckResult doerfler_minimality_check(const std::vector<double>& eta2, double theta,
                                      const std::vector<std::size_t>& marked) {
  const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
  double sum = 0.0;
  for (std::size_t e : marked) sum += eta2[e];
  if (sum < theta * total * (1.0 - 1e-12))
    return {"doerfler-minimality", false, "marked set misses the theta fraction"};
  std::vector<double> sorted = eta2;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < marked.size(); ++i) best += sorted[i];
  if (marked.size() > 1 && best >= theta * total)
    return {"doerfler-minimality", false, "a smaller set reaches the theta fraction"};
  return {"doerfler-minimality", true, fmt("cardinality %.0f of %.0f", double(marked.size()),
                                           double(eta2.size()))};
}

ReferenceCrossCheck cross_checked_reference(const BenchmarkProblem& p,
                                            const KernelQuadratureConfig& cfg,
                                            std::size_t max_elements) {
  const LevelSolver solver = make_level_solver(p, cfg);
  AdaptiveConfig ad;
  ad.theta = 0.5;
  ad.max_iterations = 200;
  ad.max_elements = max_elements;
  const AdaptiveRunRecord arec = adaptive_loop(initial_mesh(p), solver, ad);

  AdaptiveConfig un;
  un.strategy = RefinementStrategy::uniform;
  un.max_iterations = 200;
  un.max_elements = max_elements;
  const AdaptiveRunRecord urec = adaptive_loop(initial_mesh(p), solver, un);

  std::vector<double> ea, eu;
  for (const AdaptiveRow& r : arec.rows) ea.push_back(r.energy);
  for (const AdaptiveRow& r : urec.rows) eu.push_back(r.energy);
  ReferenceCrossCheck c;
  c.adaptive_value = aitken_extrapolate(ea);
  c.uniform_value = aitken_extrapolate(eu);
  c.relative_gap = std::abs(c.adaptive_value - c.uniform_value) /
                   std::max(std::abs(c.adaptive_value), 1e-300);
  return c;
}

std::vector<CheckResult> verify_benchmark(const BenchmarkProblem& p, const VerifyOptions& opt) {
  if (opt.uniform_levels < 2)
    throw TooFewRows("verification needs at least two uniform levels");
  const LevelSolver solver = make_level_solver(p, opt.quad);

  // One extra uniform level supplies the two-level energy differences.
  AdaptiveConfig un;
  un.strategy = RefinementStrategy::uniform;
  un.max_iterations = opt.uniform_levels;  // uniform_levels + 1 recorded meshes
  un.max_elements = std::size_t(-1);
  const AdaptiveRunRecord urec = adaptive_loop(initial_mesh(p), solver, un);
  std::vector<double> energies, etas;
  for (const AdaptiveRow& r : urec.rows) {
    energies.push_back(r.energy);
    etas.push_back(r.eta_total);
  }
  const std::vector<double> etas_coarse(etas.begin(), etas.end() - 1);

  std::vector<CheckResult> out;
  out.push_back(reliability_check(energies, etas_coarse));

  double reference = p.exact_energy;
  if (std::isnan(reference)) {
    const ReferenceCrossCheck c =
        cross_checked_reference(p, opt.quad, opt.adaptive_max_elements);
    out.push_back({"reference-crosscheck", c.relative_gap <= 1e-3,
                   fmt("adaptive %.12g vs uniform %.12g", c.adaptive_value, c.uniform_value)});
    reference = c.adaptive_value;
  }
  out.push_back(efficiency_check(reference, energies, etas));
  out.push_back(saturation_check(reference, energies));

  // Adaptive run with per-level marking checks.
  Mesh mesh = initial_mesh(p);
  std::vector<double> etas_ad;
  CheckResult minimality{"doerfler-minimality", true, "all levels minimal"};
  for (;;) {
    const LevelResult res = solver(mesh);
    const double tot = std::accumulate(res.eta2.begin(), res.eta2.end(), 0.0);
    etas_ad.push_back(std::sqrt(tot));
    if (mesh.n_elements() >= opt.adaptive_max_elements) break;
    const std::vector<std::size_t> marked = doerfler_mark(res.eta2, opt.theta);
    const CheckResult c = doerfler_minimality_check(res.eta2, opt.theta, marked);
    if (!c.passed) minimality = c;
    mesh = refine(mesh, std::set<std::size_t>(marked.begin(), marked.end())).mesh;
  }
  out.push_back(estimator_reduction_check(etas_ad, opt.theta));
  out.push_back(minimality);
  return out;
}

}  // namespace abem
