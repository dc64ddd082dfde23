#include "abem/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

#include "abem/errors.hpp"
#include "abem/rates.hpp"
#include "abem/solve.hpp"

namespace abem {

namespace {

constexpr double kPi = M_PI;

// Gradient of r^a * cos(a*phi) dotted with n, with phi the continuous polar
// angle delivered by the caller.
double singular_flux(Point2 x, Point2 n, double a, double phi) {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  const Point2 er{std::cos(phi), std::sin(phi)};
  const Point2 ephi{-er.y, er.x};
  const double f = a * std::pow(r, a - 1.0);
  const Point2 grad = f * std::cos(a * phi) * er - f * std::sin(a * phi) * ephi;
  return dot(grad, n);
}

// Z-shape interior occupies the wedge phi in [0, 7pi/4] at the reentrant
// corner; lift atan2 so it is continuous on the boundary.
double zshape_angle(Point2 x) {
  double a = std::atan2(x.y, x.x);
  if (a < -0.25 * kPi + 1e-9) a += 2.0 * kPi;
  return a;
}

BenchmarkProblem make_slit_hyp() {
  BenchmarkProblem p;
  p.name = "slit-hyp";
  p.description = "hyper-singular equation on the slit (-1,1)x{0} with f = 1";
  p.kind = EquationKind::hyper_singular;
  p.curve = std::make_shared<Curve>(std::vector<Point2>{{-1.0, 0.0}, {1.0, 0.0}}, false);
  p.initial_counts = {4};
  p.rhs = RhsSpec::direct([](double) { return 1.0; });
  p.exact_energy = kPi;  // u(x) = 2 sqrt(1 - x^2), <1, u> = pi
  p.expected_rate_uniform = -0.5;
  p.expected_rate_adaptive = -1.5;
  return p;
}

BenchmarkProblem make_slit_weak() {
  BenchmarkProblem p;
  p.name = "slit-weak";
  p.description = "weakly-singular equation on the slit (-1,1)x{0} with f(x) = x";
  p.kind = EquationKind::weakly_singular;
  p.curve = std::make_shared<Curve>(std::vector<Point2>{{-1.0, 0.0}, {1.0, 0.0}}, false);
  p.initial_counts = {4};
  // arclength s in [0,2] corresponds to x = s - 1
  p.rhs = RhsSpec::direct([](double s) { return s - 1.0; });
  p.exact_energy = kPi;  // phi(x) = 2x / sqrt(1 - x^2), <x, phi> = pi
  p.expected_rate_uniform = -0.5;
  p.expected_rate_adaptive = -1.5;
  return p;
}

BenchmarkProblem make_zshape() {
  BenchmarkProblem p;
  p.name = "zshape-neumann";
  p.description =
      "hyper-singular equation on a Z-shaped polygon, Neumann data of "
      "u = r^(4/7) cos(4 phi / 7)";
  p.kind = EquationKind::hyper_singular;
  p.curve = std::make_shared<Curve>(
      std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0},
                          {1.0, -1.0}},
      true);
  p.initial_counts = {1, 1, 2, 2, 2, 1};  // 9 elements, near-uniform h
  p.require_two_per_component = false;
  p.rhs = RhsSpec::neumann([](Point2 x, Point2 n) {
    return singular_flux(x, n, 4.0 / 7.0, zshape_angle(x));
  });
  p.expected_rate_uniform = -4.0 / 7.0;
  p.expected_rate_adaptive = -1.5;
  return p;
}

BenchmarkProblem make_lshape() {
  BenchmarkProblem p;
  p.name = "lshape-dirichlet";
  p.description =
      "weakly-singular equation on an L-shaped polygon, Dirichlet trace of "
      "u = r^(2/3) cos(2 phi / 3)";
  p.kind = EquationKind::weakly_singular;
  // Reentrant 3pi/2 corner at the origin with the notch straddling the
  // negative x axis, so plain atan2 is continuous on the boundary. Scaled to
  // diameter < 1 so the single-layer operator is elliptic.
  const double k = 0.25 / std::sqrt(2.0);
  p.curve = std::make_shared<Curve>(
      std::vector<Point2>{{0.0, 0.0}, {-k, -k}, {0.0, -2.0 * k}, {2.0 * k, 0.0},
                          {0.0, 2.0 * k}, {-k, k}},
      true);
  p.initial_counts = {2, 2, 4, 4, 2, 2};  // 16 elements, uniform h
  p.rhs = RhsSpec::dirichlet([](Point2 x) {
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    const double phi = std::atan2(x.y, x.x);
    return std::pow(r, 2.0 / 3.0) * std::cos(2.0 * phi / 3.0);
  });
  p.expected_rate_uniform = -2.0 / 3.0;
  p.expected_rate_adaptive = -1.5;
  return p;
}

}  // namespace

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names{"slit-hyp", "slit-weak", "zshape-neumann",
                                              "lshape-dirichlet"};
  return names;
}

BenchmarkProblem make_benchmark(const std::string& name) {
  if (name == "slit-hyp") return make_slit_hyp();
  if (name == "slit-weak") return make_slit_weak();
  if (name == "zshape-neumann") return make_zshape();
  if (name == "lshape-dirichlet") return make_lshape();
  throw std::invalid_argument("unknown benchmark: " + name);
}

Mesh initial_mesh(const BenchmarkProblem& p) {
  return build_mesh(p.curve, p.initial_counts, p.require_two_per_component);
}

LevelResult solve_level(const BenchmarkProblem& p, const Mesh& mesh,
                        const KernelQuadratureConfig& cfg) {
  const DenseSymMatrix v = assemble_V(mesh, cfg);
  if (p.kind == EquationKind::weakly_singular) {
    const std::vector<double> b = assemble_rhs(mesh, TestSpace::P0, p.rhs, cfg);
    const DiscreteFunction u = solve_weakly_singular(v, b);
    const EstimatorReport rep = estimate(mesh, u.coeffs, EstimatorVariant::weak);
    return LevelResult{rep.eta2_all(), galerkin_energy(u, b, mesh)};
  }
  const DenseSymMatrix w = assemble_W_from_V(mesh, v);
  const std::vector<double> b = assemble_rhs(mesh, TestSpace::S1, p.rhs, cfg);
  const DiscreteFunction u = solve_hyper_singular(mesh, w, b);
  const std::vector<double> d = derivative_p0(mesh, full_nodal_values(u, mesh));
  const EstimatorReport rep = estimate(mesh, d, EstimatorVariant::hyper);
  return LevelResult{rep.eta2_all(), galerkin_energy(u, b, mesh)};
}

LevelSolver make_level_solver(const BenchmarkProblem& p, KernelQuadratureConfig cfg) {
  return [p, cfg](const Mesh& mesh) { return solve_level(p, mesh, cfg); };
}

double energy_error(double reference, double energy) {
  if (std::isnan(reference))
    throw ReferenceUnavailable("no reference energy for this problem");
  return std::sqrt(std::max(0.0, reference - energy));
}

double reference_energy(const BenchmarkProblem& p, const KernelQuadratureConfig& cfg,
                        std::size_t max_elements) {
  if (!std::isnan(p.exact_energy)) return p.exact_energy;
  AdaptiveConfig acfg;
  acfg.theta = 0.5;
  acfg.max_iterations = 200;
  acfg.max_elements = max_elements;
  const AdaptiveRunRecord rec = adaptive_loop(initial_mesh(p), make_level_solver(p, cfg), acfg);
  std::vector<double> energies;
  for (const AdaptiveRow& r : rec.rows) energies.push_back(r.energy);
  return aitken_extrapolate(energies);
}

}  // namespace abem
