#ifndef ABEM_ASSEMBLY_HPP
#define ABEM_ASSEMBLY_HPP

#include <functional>
#include <vector>

#include "abem/kernels.hpp"
#include "abem/matrix.hpp"
#include "abem/mesh.hpp"

namespace abem {

enum class TestSpace { P0, S1 };

/// Right-hand side data. direct_density is a function of arclength; the
/// Dirichlet trace is evaluated at boundary points; the Neumann flux gets the
/// point and the outward unit normal of the element it is evaluated on.
struct RhsSpec {
  enum class Kind { direct_density, dirichlet_trace, neumann_flux };
  Kind kind;
  std::function<double(double)> density;
  std::function<double(Point2)> trace;
  std::function<double(Point2, Point2)> flux;

  static RhsSpec direct(std::function<double(double)> f) {
    return RhsSpec{Kind::direct_density, std::move(f), {}, {}};
  }
  static RhsSpec dirichlet(std::function<double(Point2)> g) {
    return RhsSpec{Kind::dirichlet_trace, {}, std::move(g), {}};
  }
  static RhsSpec neumann(std::function<double(Point2, Point2)> psi) {
    return RhsSpec{Kind::neumann_flux, {}, {}, std::move(psi)};
  }
};

/// Number of threads used for assembly; honors the ABEM_THREADS env var.
int assembly_threads();

Segment element_segment(const Mesh& mesh, std::size_t e);

/// Galerkin matrix of the single-layer operator V on P0. OpenMP-parallel over
/// unordered element pairs; each entry is computed entirely by one worker, so
/// the result does not depend on the thread count.
DenseSymMatrix assemble_V(const Mesh& mesh, const KernelQuadratureConfig& cfg = {});

/// Serial reference implementation; must produce bitwise-identical entries.
DenseSymMatrix assemble_V_serial(const Mesh& mesh, const KernelQuadratureConfig& cfg = {});

/// Galerkin matrix of the hyper-singular operator W on the full S1 nodal
/// basis, realized through integration by parts as <V u', v'>.
DenseSymMatrix assemble_W(const Mesh& mesh, const KernelQuadratureConfig& cfg = {});
DenseSymMatrix assemble_W_from_V(const Mesh& mesh, const DenseSymMatrix& v);

/// <f, basis_i> for the requested test space. Supported combinations:
/// direct_density with P0 or S1, dirichlet_trace with P0 (f = (K+1/2)g),
/// neumann_flux with S1 (f = (1/2-K')psi via <psi, (1/2-K)v>).
std::vector<double> assemble_rhs(const Mesh& mesh, TestSpace space, const RhsSpec& rhs,
                                 const KernelQuadratureConfig& cfg = {});

/// <hat_i, 1> for every node (the S1 mass against constants).
std::vector<double> s1_mass_with_one(const Mesh& mesh);

}  // namespace abem

#endif
