#include "abem/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "abem/errors.hpp"
#include "abem/refinement.hpp"

namespace abem {

std::vector<std::size_t> doerfler_mark(const std::vector<double>& eta2, double theta) {
  if (theta <= 0.0 || theta > 1.0) throw std::invalid_argument("theta must be in (0,1]");
  const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
  if (total <= 0.0) throw AllIndicatorsZero("cannot mark: all indicators are zero");

  std::vector<std::size_t> order(eta2.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (eta2[a] != eta2[b]) return eta2[a] > eta2[b];
    return a < b;
  });

  std::vector<std::size_t> marked;
  double acc = 0.0;
  for (std::size_t e : order) {
    marked.push_back(e);
    acc += eta2[e];
    if (acc >= theta * total) break;
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

void AdaptiveRunRecord::save_csv(std::ostream& os) const {
  char buf[256];
  os << "level,N,eta_total,error_energy,energy,kappa,marked\n";
  for (const AdaptiveRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%zu\n", r.level,
                  r.n_elements, r.eta_total, r.error_energy, r.energy, r.kappa, r.marked);
    os << buf;
  }
}

AdaptiveRunRecord adaptive_loop(Mesh mesh, const LevelSolver& solver, const AdaptiveConfig& cfg,
                                double reference_energy) {
  AdaptiveRunRecord rec;
  for (std::size_t level = 0;; ++level) {
    const LevelResult res = solver(mesh);
    const double eta2_total = std::accumulate(res.eta2.begin(), res.eta2.end(), 0.0);
    AdaptiveRow row;
    row.level = level;
    row.n_elements = mesh.n_elements();
    row.eta_total = std::sqrt(eta2_total);
    row.error_energy = std::sqrt(std::max(0.0, reference_energy - res.energy));
    row.energy = res.energy;
    row.kappa = mesh.mesh_ratio();
    row.marked = 0;
    rec.rows.push_back(row);

    if (level >= cfg.max_iterations || mesh.n_elements() >= cfg.max_elements) break;

    std::vector<std::size_t> marked;
    if (cfg.strategy == RefinementStrategy::uniform) {
      marked.resize(mesh.n_elements());
      std::iota(marked.begin(), marked.end(), 0);
    } else {
      marked = doerfler_mark(res.eta2, cfg.theta);
    }
    rec.rows.back().marked = marked.size();
    mesh = refine(mesh, std::set<std::size_t>(marked.begin(), marked.end())).mesh;
  }
  return rec;
}

std::vector<double> estimator_reduction_offsets(const std::vector<double>& eta_totals,
                                                double theta) {
  const double q = std::sqrt(1.0 - 0.5 * theta);
  std::vector<double> alpha;
  for (std::size_t l = 0; l + 1 < eta_totals.size(); ++l)
    alpha.push_back(std::max(0.0, eta_totals[l + 1] - q * eta_totals[l]));
  return alpha;
}

}  // namespace abem
