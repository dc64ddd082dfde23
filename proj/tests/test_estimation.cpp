#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "abem/adapt.hpp"
#include "abem/benchmarks.hpp"
#include "abem/errors.hpp"
#include "abem/estimator.hpp"
#include "abem/rates.hpp"
#include "abem/refinement.hpp"
#include "abem/verify.hpp"
#include "oracles.hpp"

using namespace abem;

namespace {

std::shared_ptr<Curve> slit() {
  return std::make_shared<Curve>(std::vector<Point2>{{-1.0, 0.0}, {1.0, 0.0}}, false);
}

std::shared_ptr<Curve> square() {
  return std::make_shared<Curve>(
      std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, true);
}

// Simpson is exact for the quadratic integrand (w - A_h w)^2.
double simpson_eta2(const Mesh& mesh, const std::vector<double>& w, const AveragedFunction& a,
                    std::size_t e) {
  const double d0 = w[e] - a.v_begin[e];
  const double d1 = w[e] - a.v_end[e];
  const double dm = 0.5 * (d0 + d1);
  const double l = mesh.element_length(e);
  return l * (l / 6.0) * (d0 * d0 + 4.0 * dm * dm + d1 * d1);
}

}  // namespace

TEST_CASE("averaging uses length-weighted patch means") {
  Mesh mesh = refine(build_mesh(slit(), 4), {1}).mesh;  // lengths .5 .25 .25 .5 .5
  const std::vector<double> w{1.0, 2.0, 4.0, 0.0, 3.0};
  const AveragedFunction a = clement_average(mesh, w, EstimatorVariant::hyper);
  CHECK(a.v_begin[0] == doctest::Approx(1.0));  // tip patch: element 0 alone
  CHECK(a.v_end[0] == doctest::Approx((0.5 * 1.0 + 0.25 * 2.0) / 0.75));
  CHECK(a.v_end[1] == doctest::Approx((0.25 * 2.0 + 0.25 * 4.0) / 0.5));
  CHECK(a.v_end[3] == doctest::Approx((0.5 * 0.0 + 0.5 * 3.0) / 1.0));
  CHECK(a.v_end[4] == doctest::Approx(3.0));
}

TEST_CASE("indicators match the Simpson oracle") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (const EstimatorVariant variant : {EstimatorVariant::hyper, EstimatorVariant::weak}) {
    Mesh mesh = build_mesh(square(), 3);
    mesh = refine(mesh, {0, 4, 7}).mesh;
    std::vector<double> w(mesh.n_elements());
    for (double& v : w) v = val(rng);
    const AveragedFunction a = clement_average(mesh, w, variant);
    const EstimatorReport rep = estimate(mesh, w, variant);
    double total = 0.0;
    for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
      const double ref = simpson_eta2(mesh, w, a, e);
      CHECK(rep.eta2(e) == doctest::Approx(ref).epsilon(1e-13));
      total += ref;
    }
    CHECK(rep.total_eta2() == doctest::Approx(total).epsilon(1e-13));
  }
}

TEST_CASE("weak variant splits patches at corners, hyper does not") {
  const Mesh mesh = build_mesh(square(), 2);
  std::vector<double> w(mesh.n_elements());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = double(e);
  const AveragedFunction weak = clement_average(mesh, w, EstimatorVariant::weak);
  const AveragedFunction hyper = clement_average(mesh, w, EstimatorVariant::hyper);
  // node 2 is the corner between elements 1 and 2
  CHECK(weak.v_end[1] == doctest::Approx(1.0));
  CHECK(weak.v_begin[2] == doctest::Approx(2.0));
  CHECK(hyper.v_end[1] == doctest::Approx(1.5));
  CHECK(hyper.v_begin[2] == doctest::Approx(1.5));
  // interior node 1 is averaged in both variants
  CHECK(weak.v_end[0] == doctest::Approx(0.5));
  CHECK(hyper.v_end[0] == doctest::Approx(0.5));
}

TEST_CASE("weak variant requires two elements per smooth component") {
  const Mesh mesh = build_mesh(square(), {1, 1, 1, 1}, false);
  const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(clement_average(mesh, w, EstimatorVariant::weak), SmoothComponentTooCoarse);
  CHECK_NOTHROW(clement_average(mesh, w, EstimatorVariant::hyper));
}

TEST_CASE("derivative of nodal data") {
  const Mesh mesh = build_mesh(slit(), 4);
  std::vector<double> nodal(mesh.n_nodes());
  for (std::size_t z = 0; z < nodal.size(); ++z) {
    const double s = mesh.node_arclength(z);
    nodal[z] = 3.0 * s - 1.0;
  }
  for (double d : derivative_p0(mesh, nodal)) CHECK(d == doctest::Approx(3.0));
}

TEST_CASE("doerfler marking is a minimal greedy set") {
  std::mt19937 rng(13371337);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> eta2(len(rng));
    for (double& v : eta2) v = val(rng);
    const double theta = 0.05 + 0.9 * val(rng);
    const std::vector<std::size_t> marked = doerfler_mark(eta2, theta);
    CHECK(marked.size() == oracles::exhaustive_min_cardinality(eta2, theta));
    double total = 0.0, sum = 0.0;
    for (double v : eta2) total += v;
    for (std::size_t e : marked) sum += eta2[e];
    CHECK(sum >= theta * total * (1.0 - 1e-12));
    CHECK(doerfler_minimality_check(eta2, theta, marked).passed);
  }
}

TEST_CASE("doerfler marking edge cases") {
  CHECK(doerfler_mark({1.0, 1.0, 1.0}, 1.0).size() == 3);
  CHECK(doerfler_mark({1.0, 1.0, 1.0}, 0.01) == std::vector<std::size_t>{0});  // id tie-break
  CHECK(doerfler_mark({0.5, 2.0, 0.5, 2.0}, 0.5) == std::vector<std::size_t>{1, 3});
  CHECK(doerfler_mark({0.5, 2.0, 0.5, 2.0}, 0.4) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(doerfler_mark({0.0, 0.0}, 0.5), AllIndicatorsZero);
  CHECK_THROWS_AS(doerfler_mark({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(doerfler_mark({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("rate fitting") {
  std::vector<double> n, eta;
  for (int l = 0; l < 10; ++l) {
    n.push_back(16.0 * std::pow(2.0, l));
    eta.push_back(std::pow(n.back(), -1.5));
  }
  CHECK(std::abs(fit_log_slope(n, eta, 0.5) + 1.5) <= 1e-12);
  CHECK(std::abs(fit_log_slope(n, eta, 1.0) + 1.5) <= 1e-12);
  CHECK_THROWS_AS(fit_log_slope({1.0}, {1.0}, 1.0), TooFewRows);
  CHECK_THROWS_AS(fit_log_slope(n, eta, 0.0), std::invalid_argument);
  // nan and nonpositive samples are dropped
  eta[8] = std::nan("");
  eta[9] = 0.0;
  CHECK(std::abs(fit_log_slope(n, eta, 1.0) + 1.5) <= 1e-12);
}

TEST_CASE("aitken extrapolation of geometric tails") {
  std::vector<double> seq;
  for (int k = 0; k < 12; ++k) seq.push_back(2.5 - 0.8 * std::pow(0.6, k));
  CHECK(aitken_extrapolate(seq) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK_THROWS_AS(aitken_extrapolate({1.0, 2.0}), TooFewRows);
  CHECK_THROWS_AS(aitken_extrapolate({1.0, 2.0, 1.5}), NonMonotoneInput);
}

TEST_CASE("estimator reduction offsets") {
  const double q = std::sqrt(1.0 - 0.25);
  const std::vector<double> etas{1.0, q, q * q, 0.95};
  const std::vector<double> alpha = estimator_reduction_offsets(etas, 0.5);
  REQUIRE(alpha.size() == 3);
  CHECK(alpha[0] == doctest::Approx(0.0));
  CHECK(alpha[1] == doctest::Approx(0.0));
  CHECK(alpha[2] == doctest::Approx(0.95 - q * q * q));
}

TEST_CASE("verification checks on synthetic data") {
  // clean sequences pass
  std::vector<double> energies{1.0, 1.5, 1.75, 1.875, 1.9375};
  std::vector<double> etas{0.8, 0.55, 0.39, 0.28};
  CHECK(reliability_check(energies, etas).passed);
  CHECK(saturation_check(2.0, energies).passed);
  CHECK(efficiency_check(2.0, energies, {0.8, 0.55, 0.39, 0.28, 0.2}).passed);
  CHECK_FALSE(saturation_check(1.9, energies).passed);
  CHECK_THROWS_AS(reliability_check({1.0, 1.5}, {0.8}), TooFewRows);
  CHECK_THROWS_AS(estimator_reduction_check({1.0, 0.9}, 0.5), TooFewRows);
}

TEST_CASE("tampered indicator scaling breaks the reliability ratio") {
  const BenchmarkProblem p = make_benchmark("slit-hyp");
  AdaptiveConfig cfg;
  cfg.strategy = RefinementStrategy::uniform;
  cfg.max_iterations = 9;  // the h^(1/2) drift needs several octaves to show
  cfg.max_elements = std::size_t(-1);
  KernelQuadratureConfig quad;
  quad.gauss_order = 8;
  const AdaptiveRunRecord rec = adaptive_loop(initial_mesh(p), make_level_solver(p, quad), cfg);
  std::vector<double> energies, etas, tampered;
  for (const AdaptiveRow& r : rec.rows) {
    energies.push_back(r.energy);
    etas.push_back(r.eta_total);
    // indicator built with h instead of h^(1/2): one extra factor h^(1/2)
    tampered.push_back(r.eta_total * std::sqrt(2.0 / double(r.n_elements)));
  }
  etas.pop_back();
  tampered.pop_back();
  CHECK(reliability_check(energies, etas).passed);
  CHECK_FALSE(reliability_check(energies, tampered).passed);
}

TEST_CASE("adaptive loop records and refines") {
  const BenchmarkProblem p = make_benchmark("slit-hyp");
  AdaptiveConfig cfg;
  cfg.theta = 0.5;
  cfg.max_iterations = 6;
  cfg.max_elements = 1000;
  const AdaptiveRunRecord rec = adaptive_loop(initial_mesh(p), make_level_solver(p), cfg, M_PI);
  REQUIRE(rec.rows.size() == 7);
  for (std::size_t l = 0; l + 1 < rec.rows.size(); ++l) {
    CHECK(rec.rows[l].marked > 0);
    CHECK(rec.rows[l + 1].n_elements > rec.rows[l].n_elements);
    CHECK(rec.rows[l + 1].energy > rec.rows[l].energy);  // nested spaces
    CHECK(rec.rows[l].kappa <= 2.0 + 1e-12);
  }
  CHECK(rec.rows.back().marked == 0);
  CHECK(rec.rows.back().error_energy < rec.rows.front().error_energy);
}
