#ifndef ABEM_BENCHMARKS_HPP
#define ABEM_BENCHMARKS_HPP

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "abem/adapt.hpp"
#include "abem/assembly.hpp"
#include "abem/estimator.hpp"
#include "abem/mesh.hpp"

namespace abem {

enum class EquationKind { weakly_singular, hyper_singular };

/// A convergence study problem: geometry, initial partition, data, and the
/// expected energy-error decay rates in terms of the element count N.
struct BenchmarkProblem {
  std::string name;
  std::string description;
  EquationKind kind;
  std::shared_ptr<const Curve> curve;
  std::vector<std::size_t> initial_counts;  // elements per curve edge
  bool require_two_per_component = true;
  RhsSpec rhs;
  /// |||u|||^2 when known in closed form, else NaN (extrapolate instead).
  double exact_energy = std::numeric_limits<double>::quiet_NaN();
  double expected_rate_uniform;
  double expected_rate_adaptive;
};

/// Registered problem names.
const std::vector<std::string>& benchmark_names();

/// Build a problem by name; throws std::invalid_argument for unknown names.
BenchmarkProblem make_benchmark(const std::string& name);

Mesh initial_mesh(const BenchmarkProblem& p);

/// Assemble, solve and estimate on one mesh.
LevelResult solve_level(const BenchmarkProblem& p, const Mesh& mesh,
                        const KernelQuadratureConfig& cfg = {});
LevelSolver make_level_solver(const BenchmarkProblem& p, KernelQuadratureConfig cfg = {});

/// sqrt(max(0, reference - energy)); throws ReferenceUnavailable on NaN.
double energy_error(double reference, double energy);

/// Exact energy when known, otherwise Aitken extrapolation of the energies
/// of an adaptive run up to max_elements elements.
double reference_energy(const BenchmarkProblem& p, const KernelQuadratureConfig& cfg = {},
                        std::size_t max_elements = 2000);

}  // namespace abem

#endif
