#include "abem/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "abem/errors.hpp"

namespace abem {

std::vector<double> derivative_p0(const Mesh& mesh, const std::vector<double>& nodal) {
  if (nodal.size() != mesh.n_nodes())
    throw std::invalid_argument("nodal vector size does not match mesh");
  std::vector<double> d(mesh.n_elements());
  for (std::size_t e = 0; e < mesh.n_elements(); ++e)
    d[e] = (nodal[mesh.node_end_of(e)] - nodal[mesh.node_begin_of(e)]) / mesh.element_length(e);
  return d;
}

namespace {

// Length-weighted mean of the P0 function w over the given elements.
double patch_mean(const Mesh& mesh, const std::vector<double>& w,
                  const std::vector<std::size_t>& elems) {
  double num = 0.0, den = 0.0;
  for (std::size_t e : elems) {
    num += mesh.element_length(e) * w[e];
    den += mesh.element_length(e);
  }
  return num / den;
}

// True if the patch at node z must not reach across z (weak variant only).
bool split_node(const Mesh& mesh, std::size_t z, EstimatorVariant variant) {
  if (variant != EstimatorVariant::weak) return false;
  return mesh.is_tip_node(z) || mesh.is_corner_node(z);
}

}  // namespace

AveragedFunction clement_average(const Mesh& mesh, const std::vector<double>& w,
                                 EstimatorVariant variant) {
  if (w.size() != mesh.n_elements())
    throw std::invalid_argument("element vector size does not match mesh");
  if (variant == EstimatorVariant::weak && !mesh.components_have_two_elements())
    throw SmoothComponentTooCoarse(
        "corner-splitting average needs two elements per smooth component");

  const std::size_t n = mesh.n_elements();
  AveragedFunction a;
  a.v_begin.resize(n);
  a.v_end.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t zb = mesh.node_begin_of(e);
    const std::size_t ze = mesh.node_end_of(e);
    a.v_begin[e] = split_node(mesh, zb, variant) ? w[e]
                                                 : patch_mean(mesh, w, mesh.node_elements(zb));
    a.v_end[e] = split_node(mesh, ze, variant) ? w[e]
                                               : patch_mean(mesh, w, mesh.node_elements(ze));
  }
  return a;
}

EstimatorReport::EstimatorReport(const Mesh& mesh, std::vector<double> eta2)
    : eta2_(std::move(eta2)) {
  if (eta2_.size() != mesh.n_elements())
    throw std::invalid_argument("indicator vector size does not match mesh");
  s_begin_.resize(eta2_.size());
  s_end_.resize(eta2_.size());
  for (std::size_t e = 0; e < eta2_.size(); ++e) {
    s_begin_[e] = mesh.element_begin(e);
    s_end_[e] = mesh.element_end(e);
    total2_ += eta2_[e];
  }
}

double EstimatorReport::eta(std::size_t e) const { return std::sqrt(eta2_[e]); }

double EstimatorReport::total_eta() const { return std::sqrt(total2_); }

void EstimatorReport::save_csv(std::ostream& os) const {
  char buf[256];
  os << "element,s_begin,s_end,length,eta\n";
  for (std::size_t e = 0; e < eta2_.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", e, s_begin_[e], s_end_[e],
                  s_end_[e] - s_begin_[e], std::sqrt(eta2_[e]));
    os << buf;
  }
}

EstimatorReport estimate(const Mesh& mesh, const std::vector<double>& w,
                         EstimatorVariant variant) {
  const AveragedFunction a = clement_average(mesh, w, variant);
  std::vector<double> eta2(mesh.n_elements());
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const double d0 = w[e] - a.v_begin[e];
    const double d1 = w[e] - a.v_end[e];
    const double l = mesh.element_length(e);
    // ||affine||^2 over T with endpoint values d0, d1
    eta2[e] = l * l * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  return EstimatorReport(mesh, std::move(eta2));
}

}  // namespace abem
