#ifndef ABEM_ESTIMATOR_HPP
#define ABEM_ESTIMATOR_HPP

#include <iosfwd>
#include <vector>

#include "abem/mesh.hpp"

namespace abem {

/// Piecewise affine function given by its endpoint values on every element.
/// May jump across nodes (the corner-splitting average does).
struct AveragedFunction {
  std::vector<double> v_begin;
  std::vector<double> v_end;
};

/// hyper: averaging of the arclength derivative of the S1 solution, full
/// node patches everywhere.
/// weak: averaging of the P0 density; patches are split at corner and tip
/// nodes, so every smooth component needs at least two elements.
enum class EstimatorVariant { hyper, weak };

/// Elementwise arclength derivative of an S1 nodal-value vector.
std::vector<double> derivative_p0(const Mesh& mesh, const std::vector<double>& nodal);

/// Clement-type averaging of a P0 function w: nodal values are patch means
/// (length-weighted), interpolated affinely on each element.
AveragedFunction clement_average(const Mesh& mesh, const std::vector<double>& w,
                                 EstimatorVariant variant);

/// Local indicators eta(T)^2 = length(T) * ||w - A_h w||_{L2(T)}^2 and their
/// sum. The L2 norm of the affine deviation is evaluated in closed form.
class EstimatorReport {
 public:
  EstimatorReport(const Mesh& mesh, std::vector<double> eta2);

  std::size_t n_elements() const { return eta2_.size(); }
  double eta2(std::size_t e) const { return eta2_[e]; }
  double eta(std::size_t e) const;
  const std::vector<double>& eta2_all() const { return eta2_; }
  double total_eta2() const { return total2_; }
  double total_eta() const;

  /// CSV export: element,s_begin,s_end,length,eta with full precision.
  void save_csv(std::ostream& os) const;

 private:
  std::vector<double> eta2_;
  std::vector<double> s_begin_, s_end_;
  double total2_ = 0.0;
};

/// Build the indicators for the P0 function w (the density for the weak
/// variant, the derivative of the S1 solution for the hyper variant).
EstimatorReport estimate(const Mesh& mesh, const std::vector<double>& w,
                         EstimatorVariant variant);

}  // namespace abem

#endif
