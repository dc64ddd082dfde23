#include "abem/refinement.hpp"

#include <deque>
#include <stdexcept>

#include "abem/errors.hpp"

namespace abem {

namespace {

RefinementResult bisect(const Mesh& mesh, std::vector<bool> split) {
  const std::size_t n = mesh.n_elements();
  std::vector<double> node_s;
  std::vector<int> gen;
  std::vector<std::size_t> father_of;
  std::vector<std::size_t> refined;
  node_s.reserve(mesh.n_nodes() + n);
  for (std::size_t e = 0; e < n; ++e) {
    node_s.push_back(mesh.element_begin(e));
    if (split[e]) {
      node_s.push_back(0.5 * (mesh.element_begin(e) + mesh.element_end(e)));
      gen.push_back(mesh.generation(e) + 1);
      gen.push_back(mesh.generation(e) + 1);
      father_of.push_back(e);
      father_of.push_back(e);
      refined.push_back(e);
    } else {
      gen.push_back(mesh.generation(e));
      father_of.push_back(e);
    }
  }
  if (!mesh.curve().closed()) node_s.push_back(mesh.curve().length());
  return RefinementResult{Mesh(mesh.curve_ptr(), std::move(node_s), std::move(gen)),
                          std::move(father_of), std::move(refined)};
}

}  // namespace

RefinementResult refine(const Mesh& mesh, const std::set<std::size_t>& marked) {
  if (marked.empty()) throw std::invalid_argument("marked set is empty");
  const std::size_t n = mesh.n_elements();
  std::vector<bool> split(n, false);
  std::deque<std::size_t> worklist;
  for (std::size_t e : marked) {
    if (e >= n) throw std::invalid_argument("marked element id out of range");
    split[e] = true;
    worklist.push_back(e);
  }
  // Closure: a split element may not keep a neighbour of strictly smaller generation.
  while (!worklist.empty()) {
    const std::size_t e = worklist.front();
    worklist.pop_front();
    for (std::size_t m : mesh.neighbors(e)) {
      if (!split[m] && mesh.generation(m) < mesh.generation(e)) {
        split[m] = true;
        worklist.push_back(m);
      }
    }
  }
  return bisect(mesh, std::move(split));
}

RefinementResult refine_uniform(const Mesh& mesh) {
  return bisect(mesh, std::vector<bool>(mesh.n_elements(), true));
}

std::vector<std::pair<std::size_t, std::size_t>> coarse_fine_pairing(
    const Mesh& coarse, const Mesh& fine, const std::vector<std::size_t>& father_of) {
  if (fine.n_elements() != 2 * coarse.n_elements() || father_of.size() != fine.n_elements())
    throw NotAUniformRefinement("fine mesh is not the uniform refinement of the coarse mesh");
  std::vector<std::pair<std::size_t, std::size_t>> pairs(coarse.n_elements(),
                                                         {std::size_t(-1), std::size_t(-1)});
  for (std::size_t s = 0; s < fine.n_elements(); ++s) {
    const std::size_t f = father_of[s];
    if (f >= coarse.n_elements()) throw NotAUniformRefinement("father id out of range");
    if (pairs[f].first == std::size_t(-1)) pairs[f].first = s;
    else if (pairs[f].second == std::size_t(-1)) pairs[f].second = s;
    else throw NotAUniformRefinement("coarse element with more than two sons");
  }
  for (std::size_t f = 0; f < coarse.n_elements(); ++f) {
    const auto [s1, s2] = pairs[f];
    if (s2 == std::size_t(-1)) throw NotAUniformRefinement("coarse element without two sons");
    const double len = fine.element_length(s1) + fine.element_length(s2);
    if (std::abs(len - coarse.element_length(f)) > 1e-12 * coarse.element_length(f))
      throw NotAUniformRefinement("son lengths do not add up to the father length");
  }
  return pairs;
}

}  // namespace abem
