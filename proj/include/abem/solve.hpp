#ifndef ABEM_SOLVE_HPP
#define ABEM_SOLVE_HPP

#include <vector>

#include "abem/assembly.hpp"
#include "abem/matrix.hpp"
#include "abem/mesh.hpp"

namespace abem {

/// Discrete trial spaces. S1_tip_zero is S1 with zero values at the curve
/// tips (open curves); S1_mean_zero carries the integral-mean constraint of
/// closed curves.
enum class Space { P0, S1_full, S1_tip_zero, S1_mean_zero };

/// Galerkin solution coefficients. P0: one per element. S1_tip_zero: one per
/// interior node, in node order with tips dropped. Other S1 spaces: one per
/// node.
struct DiscreteFunction {
  Space space;
  std::vector<double> coeffs;
};

/// Node ids that are not tips, ascending.
std::vector<std::size_t> interior_nodes(const Mesh& mesh);

/// Nodal values on all nodes, with tips filled with zero for S1_tip_zero.
std::vector<double> full_nodal_values(const DiscreteFunction& u, const Mesh& mesh);

/// Solve V phi = f on P0 by dense Cholesky. Throws NotSPD if the Galerkin
/// matrix is not positive definite.
DiscreteFunction solve_weakly_singular(const DenseSymMatrix& v, const std::vector<double>& rhs);

/// Solve W u = f on S1. Open curves: tip values are constrained to zero and
/// the reduced matrix is SPD. Closed curves: W annihilates constants, so the
/// rhs must satisfy the compatibility condition <f,1> = 0 (IncompatibleRhs
/// otherwise) and the solution is fixed by zero integral mean.
DiscreteFunction solve_hyper_singular(const Mesh& mesh, const DenseSymMatrix& w,
                                      const std::vector<double>& rhs);

/// x^T A x.
double galerkin_energy(const DenseSymMatrix& a, const std::vector<double>& x);

/// Energy |||u|||^2 = <A u, u> of a Galerkin solution, evaluated as the inner
/// product of the coefficient vector with the rhs it was solved against.
double galerkin_energy(const DiscreteFunction& u, const std::vector<double>& rhs,
                       const Mesh& mesh);

}  // namespace abem

#endif
