#include "abem/solve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "abem/errors.hpp"

namespace abem {

namespace {

using EMat = Eigen::MatrixXd;
using EVec = Eigen::VectorXd;

EVec llt_solve(const EMat& a, const EVec& b, const char* what) {
  Eigen::LLT<EMat> llt(a);
  if (llt.info() != Eigen::Success) throw NotSPD(what);
  return llt.solve(b);
}

}  // namespace

std::vector<std::size_t> interior_nodes(const Mesh& mesh) {
  std::vector<std::size_t> ids;
  ids.reserve(mesh.n_nodes());
  for (std::size_t z = 0; z < mesh.n_nodes(); ++z)
    if (!mesh.is_tip_node(z)) ids.push_back(z);
  return ids;
}

std::vector<double> full_nodal_values(const DiscreteFunction& u, const Mesh& mesh) {
  if (u.space == Space::P0) throw std::invalid_argument("P0 function has no nodal values");
  if (u.space != Space::S1_tip_zero) return u.coeffs;
  std::vector<double> full(mesh.n_nodes(), 0.0);
  const auto ids = interior_nodes(mesh);
  for (std::size_t i = 0; i < ids.size(); ++i) full[ids[i]] = u.coeffs[i];
  return full;
}

DiscreteFunction solve_weakly_singular(const DenseSymMatrix& v, const std::vector<double>& rhs) {
  const std::size_t n = v.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size does not match matrix");
  Eigen::Map<const EMat> a(v.data(), n, n);
  Eigen::Map<const EVec> b(rhs.data(), n);
  const EVec x = llt_solve(a, b, "single-layer Galerkin matrix not SPD");
  return DiscreteFunction{Space::P0, std::vector<double>(x.data(), x.data() + n)};
}

DiscreteFunction solve_hyper_singular(const Mesh& mesh, const DenseSymMatrix& w,
                                      const std::vector<double>& rhs) {
  const std::size_t m = mesh.n_nodes();
  if (w.size() != m || rhs.size() != m)
    throw std::invalid_argument("rhs size does not match matrix");
  Eigen::Map<const EMat> wm(w.data(), m, m);

  if (!mesh.curve().closed()) {
    const auto ids = interior_nodes(mesh);
    const std::size_t k = ids.size();
    EMat a(k, k);
    EVec b(k);
    for (std::size_t i = 0; i < k; ++i) {
      b[Eigen::Index(i)] = rhs[ids[i]];
      for (std::size_t j = 0; j < k; ++j)
        a(Eigen::Index(i), Eigen::Index(j)) = wm(Eigen::Index(ids[i]), Eigen::Index(ids[j]));
    }
    const EVec x = llt_solve(a, b, "hyper-singular Galerkin matrix not SPD");
    return DiscreteFunction{Space::S1_tip_zero, std::vector<double>(x.data(), x.data() + k)};
  }

  // W has the constants in its kernel: require <f,1> = 0 and pin the
  // solution by zero integral mean via the stabilized SPD matrix
  // Whats = W + alpha c c^T, c_z = <hat_z, 1>.
  Eigen::Map<const EVec> b(rhs.data(), m);
  const double rhs_sum = b.sum();
  const double rhs_norm = b.norm();
  if (std::abs(rhs_sum) > 1e-8 * std::max(rhs_norm, 1e-300))
    throw IncompatibleRhs("hyper-singular rhs does not annihilate constants");

  const std::vector<double> cvec = s1_mass_with_one(mesh);
  Eigen::Map<const EVec> c(cvec.data(), m);
  const double alpha = wm.trace() / double(m) / c.squaredNorm();
  const EMat what = wm + alpha * c * c.transpose();
  Eigen::LLT<EMat> llt(what);
  if (llt.info() != Eigen::Success)
    throw NotSPD("stabilized hyper-singular matrix not SPD");
  const EVec y = llt.solve(b);
  const EVec u = llt.solve(c);
  const double lambda = c.dot(y) / c.dot(u);
  const EVec x = y - lambda * u;
  return DiscreteFunction{Space::S1_mean_zero, std::vector<double>(x.data(), x.data() + m)};
}

double galerkin_energy(const DenseSymMatrix& a, const std::vector<double>& x) {
  const std::size_t n = a.size();
  Eigen::Map<const EMat> am(a.data(), n, n);
  Eigen::Map<const EVec> xv(x.data(), n);
  return xv.dot(am * xv);
}

double galerkin_energy(const DiscreteFunction& u, const std::vector<double>& rhs,
                       const Mesh& mesh) {
  if (u.space == Space::S1_tip_zero) {
    const auto ids = interior_nodes(mesh);
    double e = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) e += u.coeffs[i] * rhs[ids[i]];
    return e;
  }
  return std::inner_product(u.coeffs.begin(), u.coeffs.end(), rhs.begin(), 0.0);
}

}  // namespace abem
