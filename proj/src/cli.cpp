// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edmc/edm.hpp"
#include "edmc/io.hpp"
#include "edmc/linalg.hpp"
#include "edmc/mask.hpp"
#include "edmc/metrics.hpp"
#include "edmc/rng.hpp"
#include "edmc/solver.hpp"
#include "edmc/types.hpp"

namespace edmc::cli {

namespace {

// A distance matrix of points in R^k has rank at most k + 2; that bound is
// the target rank handed to the solver for EDM workloads.
constexpr Index kEdmRankOffset = 2;

mask::MaskMode parse_mode(const std::string& name) {
  if (name == "symmetric" || name == "symmetric_pairs") return mask::MaskMode::SymmetricPairs;
  return mask::MaskMode::IndependentEntries;
}

int exit_code_for(solver::Termination t) {
  switch (t) {
    case solver::Termination::Converged: return kOk;
    case solver::Termination::MaxIterations: return kMaxIterations;
    case solver::Termination::RankCollapse: return kRankCollapse;
    case solver::Termination::NumericalFailure: return kNumericalFailure;
  }
  return kNumericalFailure;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io::IoError("cannot open for writing: " + path);
  return out;
}

struct GenerateEdmArgs {
  Index n = 0;
  Index k = 0;
  std::uint64_t seed = 0;
  std::string out = "matrix.csv";
  std::string points_out = "points.csv";
};

int run_generate_edm(const GenerateEdmArgs& a) {
  const edm::PointCloud cloud =
      edm::random_points(a.n, a.k, edm::PointDistribution::UniformUnitCube, a.seed);
  const edm::EdmMatrix matrix = edm_from_points(cloud);
  io::write_dense(a.out, matrix.d);
  io::write_dense(a.points_out, cloud.points);
  std::cout << "generate edm: n=" << a.n << " k=" << a.k << " seed=" << a.seed
            << " matrix=" << a.out << " points=" << a.points_out << '\n';
  return kOk;
}

struct GenerateGaussianArgs {
  Index n = 0;
  Index rank = 0;
  std::uint64_t seed = 0;
  std::string out = "matrix.csv";
};

int run_generate_gaussian(const GenerateGaussianArgs& a) {
  if (a.rank > a.n) {
    std::cerr << "generate gaussian: --rank must not exceed --n\n";
    return kUsageError;
  }
  io::write_dense(a.out, edm::random_gaussian_lowrank(a.n, a.rank, a.seed));
  std::cout << "generate gaussian: n=" << a.n << " rank=" << a.rank << " seed=" << a.seed
            << " matrix=" << a.out << '\n';
  return kOk;
}

struct MaskArgs {
  std::string in;
  double p = 0.0;
  std::string mode = "symmetric";
  bool delete_diagonal = false;
  std::uint64_t seed = 0;
  std::string out = "observed.txt";
  std::string record;
};

int run_mask(const MaskArgs& a) {
  const DenseMatrix d = io::read_dense(a.in);
  if (d.rows() != d.cols())
    throw io::ParseError(a.in + ": matrix must be square, got " + std::to_string(d.rows()) + "x" +
                         std::to_string(d.cols()));
  const mask::MaskMode mode = parse_mode(a.mode);
  const mask::ObservationMask m =
      mask::random_mask(d.rows(), a.p, mode, !a.delete_diagonal, a.seed);
  io::write_observed(a.out, mask::observe(d, m));
  if (!a.record.empty()) {
    nlohmann::json j{{"n", m.n()},
                     {"deletion_fraction", a.p},
                     {"mode", mask::to_string(mode)},
                     {"keep_diagonal", !a.delete_diagonal},
                     {"seed", a.seed},
                     {"observed_count", m.observed_count()},
                     {"density", m.density()}};
    std::ofstream rec = open_csv(a.record);
    rec << j.dump(2) << '\n';
  }
  std::cout << "mask: n=" << m.n() << " p=" << a.p << " mode=" << mask::to_string(mode)
            << " seed=" << a.seed << " observed=" << m.observed_count()
            << " density=" << m.density() << " out=" << a.out << '\n';
  return kOk;
}

struct CompleteArgs {
  std::string in;
  std::string algo = "fixed-rank";
  Index rank = 0;
  double beta = 0.8;
  double epsilon = 1e-8;
  Index max_iterations = 1000;
  std::optional<double> lambda0;
  double schedule_decay = 0.9;
  std::string backend = "auto";
  std::string out = "completed.csv";
  std::string report_path;
  std::string trace_path;
  std::string truth_path;
};

int run_complete(const CompleteArgs& a) {
  const mask::ObservedMatrix observed = io::read_observed(a.in);

  solver::SolverConfig config;
  config.beta = a.beta;
  config.target_rank = a.rank;
  config.epsilon = a.epsilon;
  config.max_iterations = a.max_iterations;
  config.lambda0 = a.lambda0;
  config.svd_backend = linalg::svd_backend_from_string(a.backend);

  const bool fixed_rank = a.algo == "fixed-rank";
  solver::SolverResult result;
  if (fixed_rank) {
    result = solver::fixed_rank_soft_impute(observed, config);
  } else {
    config.lambda_schedule =
        solver::geometric_lambda_schedule(observed, config.max_iterations, a.schedule_decay);
    result = solver::soft_impute(observed, config);
  }
  io::write_dense(a.out, result.completed);
  if (!a.trace_path.empty()) io::write_trace_csv(a.trace_path, result.iterations);

  std::optional<metrics::ErrorReport> errors;
  if (!a.truth_path.empty()) {
    const DenseMatrix truth = io::read_dense(a.truth_path);
    errors = metrics::compare(truth, result.completed, observed.mask);
  }

  if (!a.report_path.empty()) {
    io::RunReport report;
    report.rng_name = rng::kGeneratorName;
    report.solver.algorithm = fixed_rank ? "fixed_rank_soft_impute" : "soft_impute";
    report.solver.beta = a.beta;
    report.solver.epsilon = a.epsilon;
    report.solver.lambda0 = a.lambda0;
    report.solver.max_iterations = a.max_iterations;
    report.solver.target_rank = a.rank;
    report.solver.svd_backend = a.backend;
    report.outcome.termination = solver::to_string(result.termination);
    report.outcome.iteration_count = static_cast<Index>(result.iterations.size());
    report.outcome.wall_time_seconds = result.wall_time_seconds;
    report.outcome.errors = errors;
    report.trace = result.iterations;
    io::write_report(a.report_path, report);
  }

  std::cout << "complete: algo=" << a.algo << " termination=" << to_string(result.termination)
            << " iterations=" << result.iterations.size()
            << " wall_time_seconds=" << result.wall_time_seconds << " out=" << a.out << '\n';
  if (errors) {
    std::cout << "errors: relative=" << errors->relative_error << " max=" << errors->max_error
              << " missing_max=" << errors->masked_only_max_error << '\n';
  }
  return exit_code_for(result.termination);
}

struct BenchArgs {
  std::string family = "edm";
  std::vector<Index> sizes;
  std::vector<Index> dims;
  std::vector<double> deletions;
  Index reps = 10;
  std::uint64_t seed = 42;
  std::string algo = "fixed-rank";
  double beta = 0.8;
  double epsilon = 1e-8;
  Index max_iterations = 1000;
  double schedule_decay = 0.9;
  std::string mode;
  bool delete_diagonal = false;
  std::string backend = "auto";
  std::string out;
};

int run_bench(const BenchArgs& a) {
  const bool edm_family = a.family == "edm";
  for (Index dim : a.dims) {
    for (Index n : a.sizes) {
      if ((edm_family ? dim + kEdmRankOffset : dim) >= n) {
        std::cerr << "bench: dimension/rank " << dim << " is too large for size " << n << '\n';
        return kUsageError;
      }
    }
  }
  const mask::MaskMode mode =
      a.mode.empty() ? (edm_family ? mask::MaskMode::SymmetricPairs
                                   : mask::MaskMode::IndependentEntries)
                     : parse_mode(a.mode);

  std::ofstream file;
  if (!a.out.empty()) file = open_csv(a.out);
  std::ostream& csv = a.out.empty() ? std::cout : file;
  csv << "size,rank,deletion,status,time_seconds,iterations,relative_error,max_error\n";

  std::uint64_t cell = 0;
  for (Index n : a.sizes) {
    for (Index dim : a.dims) {
      for (double p : a.deletions) {
        const Index target_rank = edm_family ? dim + kEdmRankOffset : dim;
        double time_sum = 0.0, iter_sum = 0.0, rel_sum = 0.0, max_sum = 0.0;
        Index completed_reps = 0;
        std::string status = "converged";
        for (Index rep = 0; rep < a.reps; ++rep) {
          const std::uint64_t rep_index = static_cast<std::uint64_t>(rep);
          DenseMatrix truth;
          if (edm_family) {
            truth = edm_from_points(edm::random_points(
                                        n, dim, edm::PointDistribution::UniformUnitCube,
                                        rng::derive_seed(a.seed, {cell, rep_index, 0})))
                        .d;
          } else {
            truth = edm::random_gaussian_lowrank(n, dim,
                                                 rng::derive_seed(a.seed, {cell, rep_index, 0}));
          }
          const mask::ObservationMask m = mask::random_mask(
              n, p, mode, !a.delete_diagonal, rng::derive_seed(a.seed, {cell, rep_index, 1}));
          const mask::ObservedMatrix observed = mask::observe(truth, m);

          solver::SolverConfig config;
          config.beta = a.beta;
          config.target_rank = target_rank;
          config.epsilon = a.epsilon;
          config.max_iterations = a.max_iterations;
          config.svd_backend = linalg::svd_backend_from_string(a.backend);

          solver::SolverResult result;
          if (a.algo == "fixed-rank") {
            result = solver::fixed_rank_soft_impute(observed, config);
          } else {
            config.lambda_schedule = solver::geometric_lambda_schedule(
                observed, config.max_iterations, a.schedule_decay);
            result = solver::soft_impute(observed, config);
          }
          if (result.termination == solver::Termination::NumericalFailure) {
            status = "numerical_failure";
            break;
          }
          if (status == "converged" && !result.converged())
            status = solver::to_string(result.termination);

          const metrics::ErrorReport errors = metrics::compare(truth, result.completed, m);
          time_sum += result.wall_time_seconds;
          iter_sum += static_cast<double>(result.iterations.size());
          rel_sum += errors.relative_error;
          max_sum += errors.max_error;
          ++completed_reps;
        }
        const double denom = completed_reps > 0 ? static_cast<double>(completed_reps)
                                                : std::numeric_limits<double>::quiet_NaN();
        csv << n << ',' << target_rank << ',' << p << ',' << status << ',' << time_sum / denom
            << ',' << iter_sum / denom << ',' << rel_sum / denom << ',' << max_sum / denom
            << '\n';
        ++cell;
      }
    }
  }
  if (!a.out.empty() && !file) throw io::IoError("write failed: " + a.out);
  return kOk;
}

struct SweepArgs {
  std::vector<double> betas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  Index reps = 10;
  Index n = 100;
  Index k = 2;
  double p = 0.4;
  std::uint64_t seed = 42;
  double epsilon = 1e-8;
  Index max_iterations = 1000;
  std::string backend = "auto";
  std::string out;
  std::string raw_out;
};

int run_sweep_beta(const SweepArgs& a) {
  for (double beta : a.betas) {
    if (!(beta > 0.0 && beta < 1.0)) {
      std::cerr << "sweep-beta: every beta must lie strictly in (0, 1), got " << beta << '\n';
      return kUsageError;
    }
  }

  std::ofstream file;
  if (!a.out.empty()) file = open_csv(a.out);
  std::ostream& csv = a.out.empty() ? std::cout : file;
  csv << "beta,mean_iterations\n";

  std::ofstream raw;
  if (!a.raw_out.empty()) {
    raw = open_csv(a.raw_out);
    raw << "beta,repetition,iterations,termination\n";
  }

  for (double beta : a.betas) {
    double iter_sum = 0.0;
    for (Index rep = 0; rep < a.reps; ++rep) {
      // Instances depend on the repetition only, so every beta sees the same
      // paired set of problems.
      const std::uint64_t rep_index = static_cast<std::uint64_t>(rep);
      const DenseMatrix truth =
          edm_from_points(edm::random_points(a.n, a.k, edm::PointDistribution::UniformUnitCube,
                                             rng::derive_seed(a.seed, {rep_index, 0})))
              .d;
      const mask::ObservationMask m =
          mask::random_mask(a.n, a.p, mask::MaskMode::SymmetricPairs, true,
                            rng::derive_seed(a.seed, {rep_index, 1}));

      solver::SolverConfig config;
      config.beta = beta;
      config.target_rank = a.k + kEdmRankOffset;
      config.epsilon = a.epsilon;
      config.max_iterations = a.max_iterations;
      config.svd_backend = linalg::svd_backend_from_string(a.backend);

      const solver::SolverResult result =
          solver::fixed_rank_soft_impute(mask::observe(truth, m), config);
      iter_sum += static_cast<double>(result.iterations.size());
      if (raw.is_open())
        raw << beta << ',' << rep << ',' << result.iterations.size() << ','
            << to_string(result.termination) << '\n';
    }
    csv << beta << ',' << iter_sum / static_cast<double>(a.reps) << '\n';
  }
  if (!a.out.empty() && !file) throw io::IoError("write failed: " + a.out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"edmc: low-rank matrix completion for Euclidean distance matrices"};
  app.require_subcommand(1);

  GenerateEdmArgs gen_edm_args;
  GenerateGaussianArgs gen_gauss_args;
  MaskArgs mask_args;
  CompleteArgs complete_args;
  BenchArgs bench_args;
  SweepArgs sweep_args;

  CLI::App* generate = app.add_subcommand("generate", "Generate ground-truth test matrices");
  generate->require_subcommand(1);

  CLI::App* gen_edm =
      generate->add_subcommand("edm", "Squared-distance matrix of uniform random points");
  gen_edm->add_option("--n", gen_edm_args.n, "Number of points")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_edm->add_option("--k", gen_edm_args.k, "Ambient dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_edm->add_option("--seed", gen_edm_args.seed, "RNG seed (default 0)");
  gen_edm->add_option("--out", gen_edm_args.out, "Output matrix CSV (default matrix.csv)");
  gen_edm->add_option("--points-out", gen_edm_args.points_out,
                      "Output point-cloud CSV (default points.csv)");

  CLI::App* gen_gauss =
      generate->add_subcommand("gaussian", "Low-rank product of Gaussian factors");
  gen_gauss->add_option("--n", gen_gauss_args.n, "Matrix size")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_gauss->add_option("--rank", gen_gauss_args.rank, "Rank of the product")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_gauss->add_option("--seed", gen_gauss_args.seed, "RNG seed (default 0)");
  gen_gauss->add_option("--out", gen_gauss_args.out, "Output matrix CSV (default matrix.csv)");

  CLI::App* mask_cmd =
      app.add_subcommand("mask", "Delete entries of a matrix and write the observed list");
  mask_cmd->add_option("--in", mask_args.in, "Input dense matrix CSV")->required();
  mask_cmd->add_option("--p", mask_args.p, "Fraction of candidates to delete")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  mask_cmd
      ->add_option("--mode", mask_args.mode,
                   "Deletion mode: symmetric (pairs go together) or independent")
      ->check(CLI::IsMember({"symmetric", "symmetric_pairs", "independent",
                             "independent_entries"}));
  mask_cmd->add_flag("--delete-diagonal", mask_args.delete_diagonal,
                     "Make diagonal entries deletable (kept by default)");
  mask_cmd->add_option("--seed", mask_args.seed, "RNG seed (default 0)");
  mask_cmd->add_option("--out", mask_args.out, "Output observed-entry file (default observed.txt)");
  mask_cmd->add_option("--record", mask_args.record, "Optional JSON mask record");

  CLI::App* complete =
      app.add_subcommand("complete", "Run a completion solver on an observed-entry file");
  complete->add_option("--in", complete_args.in, "Input observed-entry file")->required();
  complete->add_option("--algo", complete_args.algo, "Solver (default fixed-rank)")
      ->check(CLI::IsMember({"fixed-rank", "soft-impute"}));
  complete->add_option("--rank", complete_args.rank, "Target rank r (k+2 for an EDM in R^k)")
      ->required()
      ->check(CLI::PositiveNumber);
  complete->add_option("--beta", complete_args.beta,
                       "Adaptive shrinkage factor in (0,1) (default 0.8)");
  complete->add_option("--epsilon", complete_args.epsilon,
                       "Convergence tolerance (default 1e-8; deletion sweeps in published "
                       "tables also use 1e-10 and 1e-12)");
  complete->add_option("--max-iterations", complete_args.max_iterations,
                       "Iteration cap (default 1000)")
      ->check(CLI::PositiveNumber);
  double lambda0_value = 0.0;
  CLI::Option* lambda0_opt =
      complete->add_option("--lambda0", lambda0_value, "Initial lambda (default beta*sigma_{r+1})");
  complete->add_option("--schedule-decay", complete_args.schedule_decay,
                       "Geometric decay of the soft-impute schedule (default 0.9)");
  complete->add_option("--backend", complete_args.backend, "SVD backend (default auto)")
      ->check(CLI::IsMember({"auto", "dense", "truncated"}));
  complete->add_option("--out", complete_args.out,
                       "Completed matrix CSV (default completed.csv)");
  complete->add_option("--report", complete_args.report_path, "Optional JSON run report");
  complete->add_option("--trace", complete_args.trace_path, "Optional per-iteration trace CSV");
  complete->add_option("--truth", complete_args.truth_path,
                       "Ground-truth matrix CSV for error metrics");

  CLI::App* bench = app.add_subcommand(
      "bench", "Average time/iterations/errors over a grid of instances (CSV output)");
  bench->add_option("--family", bench_args.family, "Instance family (default edm)")
      ->check(CLI::IsMember({"edm", "gaussian"}));
  bench->add_option("--sizes", bench_args.sizes, "Matrix sizes, comma separated")
      ->required()
      ->delimiter(',');
  bench
      ->add_option("--dims", bench_args.dims,
                   "Point dimensions (edm) or ranks (gaussian), comma separated")
      ->required()
      ->delimiter(',');
  bench->add_option("--deletions", bench_args.deletions, "Deletion fractions, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--reps", bench_args.reps, "Repetitions per cell (default 10)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "Base seed (default 42)");
  bench->add_option("--algo", bench_args.algo, "Solver (default fixed-rank)")
      ->check(CLI::IsMember({"fixed-rank", "soft-impute"}));
  bench->add_option("--beta", bench_args.beta, "Adaptive shrinkage factor (default 0.8)");
  bench->add_option("--epsilon", bench_args.epsilon,
                    "Convergence tolerance (default 1e-8; deletion sweeps in published tables "
                    "also use 1e-10 and 1e-12)");
  bench->add_option("--max-iterations", bench_args.max_iterations, "Iteration cap (default 1000)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--schedule-decay", bench_args.schedule_decay,
                    "Soft-impute schedule decay (default 0.9)");
  bench->add_option("--mode", bench_args.mode,
                    "Mask mode override (default: symmetric for edm, independent for gaussian)")
      ->check(CLI::IsMember({"symmetric", "symmetric_pairs", "independent",
                             "independent_entries"}));
  bench->add_flag("--delete-diagonal", bench_args.delete_diagonal,
                  "Make diagonal entries deletable");
  bench->add_option("--backend", bench_args.backend, "SVD backend (default auto)")
      ->check(CLI::IsMember({"auto", "dense", "truncated"}));
  bench->add_option("--out", bench_args.out, "Output CSV (default: stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep-beta", "Mean iteration count of the fixed-rank solver over a beta grid");
  sweep->add_option("--betas", sweep_args.betas, "Beta grid (default 0.1..0.9)")->delimiter(',');
  sweep->add_option("--reps", sweep_args.reps, "Repetitions per beta (default 10)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--n", sweep_args.n, "Points per instance (default 100)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--k", sweep_args.k, "Point dimension (default 2)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--p", sweep_args.p, "Deletion fraction (default 0.4)")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--seed", sweep_args.seed, "Base seed (default 42)");
  sweep->add_option("--epsilon", sweep_args.epsilon, "Convergence tolerance (default 1e-8)");
  sweep->add_option("--max-iterations", sweep_args.max_iterations, "Iteration cap (default 1000)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--backend", sweep_args.backend, "SVD backend (default auto)")
      ->check(CLI::IsMember({"auto", "dense", "truncated"}));
  sweep->add_option("--out", sweep_args.out, "Output CSV (default: stdout)");
  sweep->add_option("--raw-out", sweep_args.raw_out, "Optional per-repetition CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsageError;
  }

  try {
    if (gen_edm->parsed()) return run_generate_edm(gen_edm_args);
    if (gen_gauss->parsed()) return run_generate_gaussian(gen_gauss_args);
    if (mask_cmd->parsed()) return run_mask(mask_args);
    if (complete->parsed()) {
      if (lambda0_opt->count() > 0) complete_args.lambda0 = lambda0_value;
      return run_complete(complete_args);
    }
    if (bench->parsed()) return run_bench(bench_args);
    if (sweep->parsed()) return run_sweep_beta(sweep_args);
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const linalg::SvdError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace edmc::cli
