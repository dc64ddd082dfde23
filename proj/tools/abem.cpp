// Command-line front end: run convergence studies, fit empirical rates, and
// check the estimator invariants on the built-in benchmark problems.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abem/adapt.hpp"
#include "abem/benchmarks.hpp"
#include "abem/errors.hpp"
#include "abem/rates.hpp"
#include "abem/verify.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct QuadFlags {
  abem::KernelQuadratureConfig cfg;
  void attach(CLI::App* cmd) {
    cmd->add_option("--gauss-order", cfg.gauss_order, "Gauss points per quadrature panel")
        ->check(CLI::Range(std::size_t(2), std::size_t(64)));
    cmd->add_option("--graded-levels", cfg.graded_levels,
                    "Geometric grading depth for near-singular panels");
    cmd->add_option("--near-ratio", cfg.near_singular_subdivision_ratio,
                    "Grading ratio of the near-singular subdivision")
        ->check(CLI::Range(0.1, 0.9));
    cmd->add_option("--far-threshold", cfg.analytic_distance_threshold,
                    "Separation (in element lengths) beyond which pairs count as far");
  }
};

struct RunOptions {
  std::string benchmark;
  std::string mode = "adaptive";
  double theta = 0.5;
  std::size_t levels = 0;  // 0: pick a default per mode
  std::size_t max_elements = 2000;
  std::string output;
  double reference = std::numeric_limits<double>::quiet_NaN();
  bool no_reference = false;
  std::size_t reference_elements = 2000;
  QuadFlags quad;
};

int cmd_run(const RunOptions& opt) {
  const abem::BenchmarkProblem p = abem::make_benchmark(opt.benchmark);

  abem::AdaptiveConfig cfg;
  cfg.theta = opt.theta;
  cfg.strategy = opt.mode == "uniform" ? abem::RefinementStrategy::uniform
                                       : abem::RefinementStrategy::adaptive;
  const bool uniform = cfg.strategy == abem::RefinementStrategy::uniform;
  cfg.max_iterations = opt.levels > 0 ? opt.levels - 1 : (uniform ? 7 : 200);
  cfg.max_elements = uniform ? std::size_t(-1) : opt.max_elements;

  double ref = opt.reference;
  if (!std::isfinite(ref) && !opt.no_reference)
    ref = abem::reference_energy(p, opt.quad.cfg, opt.reference_elements);

  const abem::AdaptiveRunRecord record = abem::adaptive_loop(
      abem::initial_mesh(p), abem::make_level_solver(p, opt.quad.cfg), cfg, ref);

  if (opt.output.empty()) {
    record.save_csv(std::cout);
  } else {
    std::ofstream os(opt.output, std::ios::binary);
    if (!os) {
      std::cerr << "cannot open output file: " << opt.output << "\n";
      return kExitConfig;
    }
    record.save_csv(os);
  }
  return 0;
}

struct RatesOptions {
  std::string csv_path;
  double tail_fraction = 0.5;
};

int cmd_rates(const RatesOptions& opt) {
  std::ifstream is(opt.csv_path);
  if (!is) {
    std::cerr << "cannot open CSV file: " << opt.csv_path << "\n";
    return kExitConfig;
  }
  std::string header;
  if (!std::getline(is, header)) throw abem::TooFewRows("empty CSV file");

  std::vector<std::string> columns;
  {
    std::stringstream hs(header);
    std::string cell;
    while (std::getline(hs, cell, ',')) columns.push_back(cell);
  }
  auto column_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::invalid_argument("CSV lacks column " + name);
  };
  const std::size_t c_n = column_of("N");
  const std::size_t c_eta = column_of("eta_total");
  const std::size_t c_err = column_of("error_energy");

  std::vector<double> n, eta, err;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != columns.size())
      throw std::invalid_argument("malformed CSV row: " + line);
    n.push_back(row[c_n]);
    eta.push_back(row[c_eta]);
    err.push_back(row[c_err]);
  }
  if (n.size() < 4) throw abem::TooFewRows("need at least 4 CSV rows to fit rates");

  std::printf("eta_rate = %.17g\n", abem::fit_log_slope(n, eta, opt.tail_fraction));
  bool have_err = false;
  for (double e : err) have_err = have_err || e > 0.0;
  if (have_err)
    std::printf("error_rate = %.17g\n", abem::fit_log_slope(n, err, opt.tail_fraction));
  else
    std::printf("error_rate = unavailable\n");
  return 0;
}

struct VerifyCmdOptions {
  std::string benchmark;
  abem::VerifyOptions opt;
  QuadFlags quad;
};

int cmd_verify(const VerifyCmdOptions& vo) {
  const abem::BenchmarkProblem p = abem::make_benchmark(vo.benchmark);
  abem::VerifyOptions opt = vo.opt;
  opt.quad = vo.quad.cfg;
  const std::vector<abem::CheckResult> results = abem::verify_benchmark(p, opt);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int cmd_list() {
  for (const std::string& name : abem::benchmark_names()) {
    const abem::BenchmarkProblem p = abem::make_benchmark(name);
    std::printf("%-18s %s\n", name.c_str(), p.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Galerkin boundary elements for the 2D Laplace integral equations"};
  app.require_subcommand(1);
  // Subcommand options live in a section named after the subcommand, e.g.
  // [run]. Command-line flags take precedence over config values.
  app.set_config("--config", "", "TOML config file with per-subcommand sections");

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Run a benchmark and emit the convergence CSV");
  run->fallthrough();
  run->add_option("benchmark,--benchmark", run_opt.benchmark, "Benchmark name (see `list`)")
      ->required();
  run->add_option("--mode", run_opt.mode, "Refinement strategy")
      ->check(CLI::IsMember({"uniform", "adaptive"}))
      ->capture_default_str();
  run->add_option("--theta", run_opt.theta, "Doerfler marking parameter")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  run->add_option("--levels", run_opt.levels,
                  "Number of recorded levels (default: 8 uniform, unlimited adaptive)");
  run->add_option("--max-elements", run_opt.max_elements,
                  "Stop refining once the mesh reaches this many elements (adaptive)")
      ->capture_default_str();
  run->add_option("-o,--output", run_opt.output, "CSV output path (default: stdout)");
  run->add_option("--reference", run_opt.reference,
                  "Reference energy |||u|||^2 used for the error column");
  run->add_flag("--no-reference", run_opt.no_reference,
                "Skip the reference energy; the error column becomes nan");
  run->add_option("--reference-elements", run_opt.reference_elements,
                  "Element budget of the extrapolation run behind the default reference")
      ->capture_default_str();
  run_opt.quad.attach(run);

  RatesOptions rates_opt;
  CLI::App* rates = app.add_subcommand("rates", "Fit log-log convergence rates from a run CSV");
  rates->fallthrough();
  rates->add_option("csv", rates_opt.csv_path, "CSV produced by `run`")->required();
  rates->add_option("--tail-fraction", rates_opt.tail_fraction,
                    "Trailing fraction of rows used for the fit")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();

  VerifyCmdOptions verify_opt;
  CLI::App* verify =
      app.add_subcommand("verify", "Check reliability, efficiency and marking invariants");
  verify->fallthrough();
  verify->add_option("benchmark,--benchmark", verify_opt.benchmark,
                     "Benchmark name (see `list`)")
      ->required();
  verify->add_option("--levels", verify_opt.opt.uniform_levels,
                     "Number of uniform levels for the two-level checks")
      ->capture_default_str();
  verify->add_option("--theta", verify_opt.opt.theta, "Doerfler marking parameter")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  verify->add_option("--max-elements", verify_opt.opt.adaptive_max_elements,
                     "Element budget of the adaptive part of the suite")
      ->capture_default_str();
  verify_opt.quad.attach(verify);

  CLI::App* list = app.add_subcommand("list", "List the available benchmarks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (rates->parsed()) return cmd_rates(rates_opt);
    if (verify->parsed()) return cmd_verify(verify_opt);
    if (list->parsed()) return cmd_list();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
