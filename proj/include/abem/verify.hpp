#ifndef ABEM_VERIFY_HPP
#define ABEM_VERIFY_HPP

#include <string>
#include <vector>

#include "abem/benchmarks.hpp"

namespace abem {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Stability of the reliability ratio sqrt(E_{l+1} - E_l) / eta_l over
/// consecutive uniform levels: max/min of the ratios must not exceed
/// max_spread. energies needs one more entry than etas.
CheckResult reliability_check(const std::vector<double>& energies,
                              const std::vector<double>& etas, double max_spread = 10.0);

/// Boundedness of the efficiency ratio eta_l / sqrt(E_ref - E_l).
CheckResult efficiency_check(double reference, const std::vector<double>& energies,
                             const std::vector<double>& etas, double bound = 10.0);

/// Saturation observation: the energy error decreases strictly from level to
/// level.
CheckResult saturation_check(double reference, const std::vector<double>& energies);

/// Estimator reduction along an adaptive run: the offsets
/// alpha_l = max(0, eta_{l+1} - sqrt(1-theta/2) eta_l) trend to zero (mean of
/// the last quarter below the mean of the first quarter) and eta decreases
/// monotonically after the first quarter of levels.
CheckResult estimator_reduction_check(const std::vector<double>& etas, double theta);

/// Marked set is a valid Doerfler set of minimal cardinality for eta2.
CheckResult doerfler_minimality_check(const std::vector<double>& eta2, double theta,
                                      const std::vector<std::size_t>& marked);

struct VerifyOptions {
  std::size_t uniform_levels = 6;  // number of recorded uniform meshes
  double theta = 0.5;
  std::size_t adaptive_max_elements = 1500;
  KernelQuadratureConfig quad;
};

/// Extrapolated reference energies from the adaptive and the uniform energy
/// sequences; the two must agree to 1e-3 relative.
struct ReferenceCrossCheck {
  double adaptive_value;
  double uniform_value;
  double relative_gap;
};
ReferenceCrossCheck cross_checked_reference(const BenchmarkProblem& p,
                                            const KernelQuadratureConfig& cfg = {},
                                            std::size_t max_elements = 1500);

/// Full invariant suite for one benchmark. Throws TooFewRows when
/// uniform_levels < 2.
std::vector<CheckResult> verify_benchmark(const BenchmarkProblem& p, const VerifyOptions& opt);

}  // namespace abem

#endif
