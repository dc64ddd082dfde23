#ifndef ABEM_ADAPT_HPP
#define ABEM_ADAPT_HPP

#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "abem/mesh.hpp"

namespace abem {

/// Minimal-cardinality Doerfler marking: smallest element set with
/// sum of eta(T)^2 over the set >= theta * total. Greedy over indicators
/// sorted descending; ties are broken by element id. Throws
/// AllIndicatorsZero when every indicator vanishes.
std::vector<std::size_t> doerfler_mark(const std::vector<double>& eta2, double theta);

enum class RefinementStrategy { adaptive, uniform };

struct AdaptiveConfig {
  double theta = 0.5;
  std::size_t max_iterations = 20;
  std::size_t max_elements = 2000;
  RefinementStrategy strategy = RefinementStrategy::adaptive;
};

/// Per-mesh solve outcome the loop needs: local indicators and the Galerkin
/// energy |||u_h|||^2.
struct LevelResult {
  std::vector<double> eta2;
  double energy;
};
using LevelSolver = std::function<LevelResult(const Mesh&)>;

struct AdaptiveRow {
  std::size_t level;
  std::size_t n_elements;
  double eta_total;     // sqrt of the indicator sum
  double error_energy;  // sqrt(max(0, E_ref - E)); nan without a reference
  double energy;
  double kappa;  // mesh ratio
  std::size_t marked;  // 0 on the final level
};

struct AdaptiveRunRecord {
  std::vector<AdaptiveRow> rows;
  /// CSV schema: level,N,eta_total,error_energy,energy,kappa,marked
  void save_csv(std::ostream& os) const;
};

/// Run solve -> estimate -> mark -> refine until max_iterations levels were
/// refined or the element count reaches max_elements. The initial mesh is
/// always solved and recorded, so max_iterations = 0 gives one row. The
/// uniform strategy refines every element instead of marking.
AdaptiveRunRecord adaptive_loop(Mesh mesh, const LevelSolver& solver, const AdaptiveConfig& cfg,
                                double reference_energy =
                                    std::numeric_limits<double>::quiet_NaN());

/// Estimator reduction offsets alpha_l = max(0, eta_{l+1} - q * eta_l) with
/// q = sqrt(1 - theta/2); contraction of the estimator drives these to zero.
std::vector<double> estimator_reduction_offsets(const std::vector<double>& eta_totals,
                                                double theta);

}  // namespace abem

#endif
