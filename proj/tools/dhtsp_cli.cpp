// Command-line front end: solve, gen, oracle, bench.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dhtsp/solver.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCertificateFailure = 2;

struct SolveArgs {
  std::string instance;
  std::string trace;
  bool exact = false;
  bool no_certificate = false;
  bool check_invariants = false;
  bool full_scan = false;
};

struct GenArgs {
  std::size_t n = 10;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  double box = 100.0;
  std::string output;
};

struct OracleArgs {
  std::string instance;
  bool exact = false;
};

struct BenchArgs {
  std::vector<std::size_t> sizes{100, 500, 1000};
  std::size_t trials = 3;
  double alpha = 1.5;
  std::uint64_t seed = 1;
  double box = 100.0;
};

// Reads and validates; prints diagnostics to stderr on failure.
std::optional<dhtsp::Instance> load(const std::string& path) {
  try {
    dhtsp::Instance inst = dhtsp::read_json(path);
    const auto report = dhtsp::validate(inst);
    if (!report.ok()) {
      std::cerr << "invalid instance " << path << "\n" << dhtsp::to_json(report).dump(2) << "\n";
      return std::nullopt;
    }
    return inst;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

template <class T>
int run_solve(const dhtsp::Instance& inst, const SolveArgs& args) {
  dhtsp::SolveOptions options;
  options.certificate = !args.no_certificate;
  options.growth.check_invariants = args.check_invariants;
  options.growth.scan = args.full_scan ? dhtsp::ScanMode::Full : dhtsp::ScanMode::Incremental;
  std::ofstream trace;
  if (!args.trace.empty()) {
    trace.open(args.trace);
    if (!trace) {
      std::cerr << "error: cannot write trace file " << args.trace << "\n";
      return kInputError;
    }
    options.growth.sink = [&trace](const dhtsp::IterationEvent& ev) { trace << dhtsp::trace_line(ev) << '\n'; };
  }
  try {
    const auto result = dhtsp::solve<T>(inst, options);
    std::cout << dhtsp::to_json(result).dump() << "\n";
    std::cerr << "solved " << inst.n_targets << " targets in " << result.iterations << " iterations, "
              << result.wall_time_s << " s\n";
    if (!result.feasible()) {
      std::cerr << "certificate check failed\n";
      return kCertificateFailure;
    }
    return kOk;
  } catch (const dhtsp::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kCertificateFailure;
  }
}

int cmd_solve(const SolveArgs& args) {
  const auto inst = load(args.instance);
  if (!inst) return kInputError;
  return args.exact ? run_solve<dhtsp::Rational>(*inst, args) : run_solve<double>(*inst, args);
}

int cmd_gen(const GenArgs& args) {
  try {
    const auto inst = dhtsp::generate(args.n, args.alpha, args.seed, args.box);
    if (args.output.empty() || args.output == "-") {
      std::cout << dhtsp::to_json(inst).dump() << "\n";
    } else {
      dhtsp::write_json(inst, args.output);
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_oracle(const OracleArgs& args) {
  const auto inst = load(args.instance);
  if (!inst) return kInputError;
  try {
    if (args.exact) {
      std::cout << dhtsp::to_json(dhtsp::solve_exact<dhtsp::Rational>(*inst)).dump() << "\n";
    } else {
      std::cout << dhtsp::to_json(dhtsp::solve_exact<double>(*inst)).dump() << "\n";
    }
    return kOk;
  } catch (const dhtsp::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmd_bench(const BenchArgs& args) {
  int status = kOk;
  for (std::size_t n : args.sizes) {
    double sum_time = 0.0;
    double max_time = 0.0;
    double sum_cert = 0.0;
    double sum_iter = 0.0;
    std::size_t max_iter = 0;
    double sum_ratio = 0.0;
    std::size_t ratio_count = 0;
    bool all_feasible = true;
    for (std::size_t t = 0; t < args.trials; ++t) {
      const std::uint64_t seed = args.seed * 1000003ULL + n * 7919ULL + t;
      dhtsp::Instance inst;
      try {
        inst = dhtsp::generate(n, args.alpha, seed, args.box);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
      }
      try {
        dhtsp::SolveOptions options;
        options.certificate = false;
        auto result = dhtsp::solve<double>(inst, options);
        const auto cert_start = std::chrono::steady_clock::now();
        const auto cert = dhtsp::certify(result.history, inst, result.hsf, result.tours);
        const double cert_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - cert_start).count();
        all_feasible = all_feasible && cert.feasible;
        // Time per instance covers the whole solve, certificate included.
        const double total_s = result.wall_time_s + cert_s;
        sum_cert += cert_s;
        sum_time += total_s;
        max_time = std::max(max_time, total_s);
        sum_iter += static_cast<double>(result.iterations);
        max_iter = std::max(max_iter, result.iterations);
        if (const auto r = result.ratio_vs_dual()) {
          sum_ratio += *r;
          ++ratio_count;
        }
      } catch (const dhtsp::InvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        all_feasible = false;
      }
    }
    if (!all_feasible) status = kCertificateFailure;
    const double trials = static_cast<double>(std::max<std::size_t>(args.trials, 1));
    dhtsp::ordered_json row;
    row["n"] = n;
    row["trials"] = args.trials;
    row["mean_time_s"] = sum_time / trials;
    row["max_time_s"] = max_time;
    row["mean_certify_s"] = sum_cert / trials;
    row["mean_iterations"] = dhtsp::json_number(sum_iter / trials);
    row["max_iterations"] = max_iter;
    row["iteration_bound"] = 3 * n + 2;
    row["mean_ratio_vs_dual"] = ratio_count ? dhtsp::json_number(sum_ratio / static_cast<double>(ratio_count))
                                            : dhtsp::ordered_json();
    row["all_feasible"] = all_feasible;
    std::cout << row.dump() << std::endl;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-depot heterogeneous TSP: primal-dual 2-approximation with dual certificates"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve an instance and print tours plus certificate as JSON");
  solve->add_option("instance", solve_args.instance, "Instance JSON file")->required();
  solve->add_option("--trace", solve_args.trace, "Write one JSON line per iteration to this file");
  solve->add_flag("--exact-arith", solve_args.exact, "Run growth and certificate in rational arithmetic");
  solve->add_flag("--no-certificate", solve_args.no_certificate, "Skip the dual feasibility checks");
  solve->add_flag("--check-invariants", solve_args.check_invariants, "Assert growth invariants every iteration");
  solve->add_flag("--full-scan", solve_args.full_scan, "Recompute epsilons by scanning every edge");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random Euclidean instance");
  gen->add_option("--n", gen_args.n, "Number of targets");
  gen->add_option("--alpha", gen_args.alpha, "Vehicle-2 cost scale (>= 1)");
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--box", gen_args.box, "Side of the square");
  gen->add_option("-o,--output", gen_args.output, "Output file (stdout when omitted)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by enumeration (at most 12 targets)");
  oracle->add_option("instance", oracle_args.instance, "Instance JSON file")->required();
  oracle->add_flag("--exact-arith", oracle_args.exact, "Rational arithmetic");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the solver on generated instances (JSON lines)");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated target counts")->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "Instances per size");
  bench->add_option("--alpha", bench_args.alpha, "Vehicle-2 cost scale (>= 1)");
  bench->add_option("--seed", bench_args.seed, "Base seed");
  bench->add_option("--box", bench_args.box, "Side of the square");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  if (gen_args.alpha < 1.0 && gen->parsed()) {
    std::cerr << "error: alpha must be >= 1\n";
    return kInputError;
  }
  if (*solve) return cmd_solve(solve_args);
  if (*gen) return cmd_gen(gen_args);
  if (*oracle) return cmd_oracle(oracle_args);
  if (*bench) return cmd_bench(bench_args);
  return kInputError;
}
