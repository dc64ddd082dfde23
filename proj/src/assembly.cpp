#include "abem/assembly.hpp"

#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace abem {

namespace {

std::vector<Segment> all_segments(const Mesh& mesh) {
  std::vector<Segment> segs;
  segs.reserve(mesh.n_elements());
  for (std::size_t e = 0; e < mesh.n_elements(); ++e)
    segs.push_back(make_segment(mesh.element_point_begin(e), mesh.element_point_end(e)));
  return segs;
}

// Outer quadrature of f(s), s the arclength on tj, with the near/far rule
// used by the kernel integrals.
template <typename F>
double integrate_outer(const Segment& tj, const Segment& tk, F&& f,
                       const KernelQuadratureConfig& cfg, const GaussRule& rule) {
  const double scale = std::max(tj.length, tk.length);
  const SegmentProximity prox = segment_proximity(tj, tk);
  if (prox.distance >= cfg.analytic_distance_threshold * scale)
    return gauss_integrate(f, 0.0, tj.length, rule);
  double sum = 0.0;
  const double s_star = prox.s;
  const double edge_tol = 1e-14 * tj.length;
  if (s_star > edge_tol)
    sum += graded_integrate(f, 0.0, s_star, s_star, cfg.near_singular_subdivision_ratio,
                            cfg.graded_levels, rule);
  if (s_star < tj.length - edge_tol)
    sum += graded_integrate(f, s_star, tj.length, s_star, cfg.near_singular_subdivision_ratio,
                            cfg.graded_levels, rule);
  return sum;
}

// Quadrature for boundary data with possible integrable endpoint
// singularities (corner behaviour like r^{-3/7}): grade towards both ends.
constexpr std::size_t kDataGradedLevels = 64;

template <typename F>
double integrate_data(F&& f, double a, double b, const KernelQuadratureConfig& cfg,
                      const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  return graded_integrate(f, a, mid, a, cfg.near_singular_subdivision_ratio,
                          kDataGradedLevels, rule) +
         graded_integrate(f, mid, b, b, cfg.near_singular_subdivision_ratio,
                          kDataGradedLevels, rule);
}

}  // namespace

int assembly_threads() {
#ifdef _OPENMP
  int nt = omp_get_max_threads();
#else
  int nt = 1;
#endif
  if (const char* env = std::getenv("ABEM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0 && cap < nt) nt = cap;
  }
  return nt;
}

Segment element_segment(const Mesh& mesh, std::size_t e) {
  return make_segment(mesh.element_point_begin(e), mesh.element_point_end(e));
}

DenseSymMatrix assemble_V(const Mesh& mesh, const KernelQuadratureConfig& cfg) {
  const std::size_t n = mesh.n_elements();
  const std::vector<Segment> segs = all_segments(mesh);
  DenseSymMatrix v(n);
  gauss_rule(cfg.gauss_order);  // warm the rule cache before going parallel
  const int nt = assembly_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
  for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(n); ++j)
    for (std::size_t k = std::size_t(j); k < n; ++k)
      v.set_sym(std::size_t(j), k, slp_pair_integral(segs[std::size_t(j)], segs[k], cfg));
  return v;
}

DenseSymMatrix assemble_V_serial(const Mesh& mesh, const KernelQuadratureConfig& cfg) {
  const std::size_t n = mesh.n_elements();
  const std::vector<Segment> segs = all_segments(mesh);
  DenseSymMatrix v(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k)
      v.set_sym(j, k, slp_pair_integral(segs[j], segs[k], cfg));
  return v;
}

DenseSymMatrix assemble_W_from_V(const Mesh& mesh, const DenseSymMatrix& v) {
  const std::size_t m = mesh.n_nodes();
  DenseSymMatrix w(m);
  // W = B^T V B with B the arclength-derivative map from S1 nodal values to
  // P0: each node touches at most two elements, so each entry has <= 4 terms.
  auto terms = [&](std::size_t z, std::size_t idx) -> std::pair<std::size_t, double> {
    const auto elems = mesh.node_elements(z);
    const std::size_t e = elems[idx];
    const double sgn = (mesh.node_end_of(e) == z) ? 1.0 : -1.0;
    return {e, sgn / mesh.element_length(e)};
  };
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t np = mesh.node_elements(p).size();
    for (std::size_t q = p; q < m; ++q) {
      const std::size_t nq = mesh.node_elements(q).size();
      double sum = 0.0;
      for (std::size_t i = 0; i < np; ++i) {
        const auto [e, be] = terms(p, i);
        for (std::size_t j = 0; j < nq; ++j) {
          const auto [f, bf] = terms(q, j);
          sum += be * bf * v(e, f);
        }
      }
      w.set_sym(p, q, sum);
    }
  }
  return w;
}

DenseSymMatrix assemble_W(const Mesh& mesh, const KernelQuadratureConfig& cfg) {
  return assemble_W_from_V(mesh, assemble_V(mesh, cfg));
}

std::vector<double> s1_mass_with_one(const Mesh& mesh) {
  std::vector<double> c(mesh.n_nodes(), 0.0);
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const double half = 0.5 * mesh.element_length(e);
    c[mesh.node_begin_of(e)] += half;
    c[mesh.node_end_of(e)] += half;
  }
  return c;
}

namespace {

std::vector<double> rhs_direct(const Mesh& mesh, TestSpace space, const RhsSpec& rhs,
                               const KernelQuadratureConfig& cfg) {
  const GaussRule& rule = gauss_rule(cfg.gauss_order);
  if (space == TestSpace::P0) {
    std::vector<double> b(mesh.n_elements());
    for (std::size_t e = 0; e < mesh.n_elements(); ++e)
      b[e] = gauss_integrate(rhs.density, mesh.element_begin(e), mesh.element_end(e), rule);
    return b;
  }
  std::vector<double> b(mesh.n_nodes(), 0.0);
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    const double sb = mesh.element_begin(e);
    const double len = mesh.element_length(e);
    double vb = 0.0, ve = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = rule.nodes[i];
      const double f = rhs.density(sb + t * len);
      vb += rule.weights[i] * f * (1.0 - t);
      ve += rule.weights[i] * f * t;
    }
    b[mesh.node_begin_of(e)] += vb * len;
    b[mesh.node_end_of(e)] += ve * len;
  }
  return b;
}

std::vector<double> rhs_dirichlet(const Mesh& mesh, const RhsSpec& rhs,
                                  const KernelQuadratureConfig& cfg) {
  const std::size_t n = mesh.n_elements();
  const std::vector<Segment> segs = all_segments(mesh);
  const GaussRule& rule = gauss_rule(cfg.gauss_order);

  std::vector<double> b(n, 0.0);
  const int nt = assembly_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
  for (std::ptrdiff_t ej = 0; ej < std::ptrdiff_t(n); ++ej) {
    const std::size_t e = std::size_t(ej);
    double acc = 0.0;
    // (1/2) <g, chi_T>
    acc += 0.5 * integrate_data(
                     [&](double s) { return rhs.trace(mesh.curve().point_at(s)); },
                     mesh.element_begin(e), mesh.element_end(e), cfg, rule);
    // <K g, chi_T> = <g, K' chi_T> with the exact trace; the f = e pair
    // vanishes since the kernel is zero along the element's own line.
    for (std::size_t f = 0; f < n; ++f) {
      if (f == e) continue;
      const double sb = mesh.element_begin(f);
      acc += integrate_outer(
          segs[f], segs[e],
          [&](double s) {
            return rhs.trace(mesh.curve().point_at(sb + s)) *
                   dlp_segment_potential(segs[e], segs[f].a + s * segs[f].tangent,
                                         segs[f].normal);
          },
          cfg, rule);
    }
    b[e] = acc;
  }
  return b;
}

std::vector<double> rhs_neumann(const Mesh& mesh, const RhsSpec& rhs,
                                const KernelQuadratureConfig& cfg) {
  const std::size_t n = mesh.n_elements();
  const std::size_t m = mesh.n_nodes();
  const std::vector<Segment> segs = all_segments(mesh);
  const GaussRule& rule = gauss_rule(cfg.gauss_order);

  std::vector<double> b(m, 0.0);
  const int nt = assembly_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
  for (std::ptrdiff_t zj = 0; zj < std::ptrdiff_t(m); ++zj) {
    const std::size_t z = std::size_t(zj);
    double acc = 0.0;
    for (std::size_t e : mesh.node_elements(z)) {
      const Segment& seg = segs[e];
      const bool z_is_end = mesh.node_end_of(e) == z;
      // (1/2) <psi, hat_z> with the exact flux
      const double sb = mesh.element_begin(e);
      const double len = mesh.element_length(e);
      acc += 0.5 * integrate_data(
                       [&](double s) {
                         const double t = (s - sb) / len;
                         const double hat = z_is_end ? t : 1.0 - t;
                         return hat * rhs.flux(mesh.curve().point_at(s), seg.normal);
                       },
                       sb, sb + len, cfg, rule);
      // -<psi, K hat_z> accumulated over outer elements with the exact flux
      const double alpha = z_is_end ? 0.0 : 1.0;
      const double beta = (z_is_end ? 1.0 : -1.0) / seg.length;
      for (std::size_t f = 0; f < n; ++f) {
        if (f == e) continue;
        const double sf = mesh.element_begin(f);
        acc -= integrate_outer(
            segs[f], seg,
            [&](double s) {
              return rhs.flux(mesh.curve().point_at(sf + s), segs[f].normal) *
                     dlp_inner_affine(seg, segs[f].a + s * segs[f].tangent, alpha, beta);
            },
            cfg, rule);
      }
    }
    b[z] = acc;
  }
  return b;
}

}  // namespace

std::vector<double> assemble_rhs(const Mesh& mesh, TestSpace space, const RhsSpec& rhs,
                                 const KernelQuadratureConfig& cfg) {
  switch (rhs.kind) {
    case RhsSpec::Kind::direct_density:
      return rhs_direct(mesh, space, rhs, cfg);
    case RhsSpec::Kind::dirichlet_trace:
      if (space != TestSpace::P0)
        throw std::invalid_argument("dirichlet_trace rhs is assembled against P0");
      return rhs_dirichlet(mesh, rhs, cfg);
    case RhsSpec::Kind::neumann_flux:
      if (space != TestSpace::S1)
        throw std::invalid_argument("neumann_flux rhs is assembled against S1");
      return rhs_neumann(mesh, rhs, cfg);
  }
  throw std::logic_error("unknown rhs kind");
}

}  // namespace abem
