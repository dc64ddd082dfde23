#ifndef ABEM_REFINEMENT_HPP
#define ABEM_REFINEMENT_HPP

#include <cstddef>
#include <set>
#include <vector>

#include "abem/mesh.hpp"

namespace abem {

struct RefinementResult {
  Mesh mesh;
  /// father_of[son] = element id in the input mesh.
  std::vector<std::size_t> father_of;
  /// Input-mesh element ids that were bisected (marked set plus closure).
  std::vector<std::size_t> refined_set;
};

/// Bisect at least the marked elements. Closure keeps neighbouring generations
/// within 1 of each other, which bounds the mesh ratio by 2*kappa(T_0).
RefinementResult refine(const Mesh& mesh, const std::set<std::size_t>& marked);

/// Bisect every element.
RefinementResult refine_uniform(const Mesh& mesh);

/// For fine = refine_uniform(coarse): maps each coarse element to its two sons.
/// Throws NotAUniformRefinement otherwise.
std::vector<std::pair<std::size_t, std::size_t>> coarse_fine_pairing(
    const Mesh& coarse, const Mesh& fine, const std::vector<std::size_t>& father_of);

}  // namespace abem

#endif
