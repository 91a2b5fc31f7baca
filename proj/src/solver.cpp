// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace edmc::solver {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_observed(const mask::ObservedMatrix& observed) {
  const Index n = observed.mask.n();
  if (observed.values.rows() != n || observed.values.cols() != n)
    throw std::invalid_argument("solver: observed values shape does not match mask");
  if (observed.mask.observed_count() < 1)
    throw std::invalid_argument("solver: observation set is empty");
  if (!all_finite(observed.values))
    throw std::invalid_argument("solver: observed values must be finite");
  if (!(mask::project(observed.values, observed.mask).array() == observed.values.array()).all())
    throw std::invalid_argument("solver: observed values must be zero off the mask");
}

void check_config(const mask::ObservedMatrix& observed, const SolverConfig& config,
                  bool adaptive) {
  const Index n = observed.mask.n();
  if (adaptive && !(config.beta > 0.0 && config.beta < 1.0))
    throw std::invalid_argument("solver: beta must lie strictly in (0, 1)");
  if (config.target_rank < 1)
    throw std::invalid_argument("solver: target_rank must be positive");
  if (adaptive && config.target_rank >= n)
    throw std::invalid_argument("solver: target_rank must satisfy r < n");
  if (!(config.epsilon > 0.0))
    throw std::invalid_argument("solver: epsilon must be positive");
  if (config.max_iterations < 1)
    throw std::invalid_argument("solver: max_iterations must be positive");
  if (config.lambda0 && !(*config.lambda0 >= 0.0 && std::isfinite(*config.lambda0)))
    throw std::invalid_argument("solver: lambda0 must be finite and non-negative");
}

// Rank of the thresholded iterate, read off the shrunk singular values.
Index thresholded_rank(const linalg::SvdFactorization& f, double lambda) {
  if (f.value_count() == 0 || f.sigma[0] <= lambda) return 0;
  const double top = f.sigma[0] - lambda;
  Index rank = 0;
  while (rank < f.value_count() && f.sigma[rank] - lambda > linalg::kRankRelTol * top) ++rank;
  return rank;
}

double sigma_at(const linalg::SvdFactorization& f, Index pos) {
  return pos < f.value_count() ? f.sigma[pos] : 0.0;
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::RankCollapse: return "rank_collapse";
    case Termination::NumericalFailure: return "numerical_failure";
  }
  return "numerical_failure";
}

Termination termination_from_string(const std::string& name) {
  if (name == "converged") return Termination::Converged;
  if (name == "max_iterations") return Termination::MaxIterations;
  if (name == "rank_collapse") return Termination::RankCollapse;
  if (name == "numerical_failure") return Termination::NumericalFailure;
  throw std::invalid_argument("unknown termination: " + name);
}

double convergence_statistic(const DenseMatrix& x_new, const DenseMatrix& x_old) {
  if (x_new.rows() != x_old.rows() || x_new.cols() != x_old.cols())
    throw std::invalid_argument("convergence_statistic: shape mismatch");
  const double denom = x_old.norm();
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return (x_new - x_old).norm() / denom;
}

double default_lambda0(const mask::ObservedMatrix& observed, const SolverConfig& config) {
  check_observed(observed);
  check_config(observed, config, /*adaptive=*/true);
  const linalg::SvdFactorization f =
      linalg::svd_partial(observed.values, std::numeric_limits<double>::infinity(),
                          config.target_rank + 1, config.svd_backend);
  return config.beta * sigma_at(f, config.target_rank);
}

std::vector<double> geometric_lambda_schedule(const mask::ObservedMatrix& observed, Index length,
                                              double decay) {
  check_observed(observed);
  if (length < 1) throw std::invalid_argument("geometric_lambda_schedule: length must be positive");
  if (!(decay > 0.0 && decay < 1.0))
    throw std::invalid_argument("geometric_lambda_schedule: decay must lie strictly in (0, 1)");
  const linalg::SvdFactorization f = linalg::svd_partial(
      observed.values, std::numeric_limits<double>::infinity(), 1, linalg::SvdBackend::Auto);
  const double sigma1 = sigma_at(f, 0);
  std::vector<double> schedule(static_cast<std::size_t>(length));
  double level = sigma1;
  for (auto& lambda : schedule) {
    level *= decay;
    lambda = level;
  }
  return schedule;
}

SolverResult soft_impute(const mask::ObservedMatrix& observed, const SolverConfig& config) {
  check_observed(observed);
  check_config(observed, config, /*adaptive=*/false);
  if (!config.lambda_schedule || config.lambda_schedule->empty())
    throw std::invalid_argument("soft_impute: a non-empty lambda_schedule is required");
  const std::vector<double>& schedule = *config.lambda_schedule;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] >= 0.0) || !std::isfinite(schedule[i]))
      throw std::invalid_argument("soft_impute: schedule entries must be finite and >= 0");
    if (i > 0 && !(schedule[i] < schedule[i - 1]))
      throw std::invalid_argument("soft_impute: schedule must be strictly decreasing");
  }

  const auto start = Clock::now();
  const Index n = observed.mask.n();
  const Index budget = std::min<Index>(config.max_iterations, static_cast<Index>(schedule.size()));

  SolverResult result;
  result.termination = Termination::MaxIterations;
  DenseMatrix x_old = DenseMatrix::Zero(n, n);
  result.completed = x_old;

  for (Index iter = 1; iter <= budget; ++iter) {
    const double lambda = schedule[static_cast<std::size_t>(iter - 1)];
    const DenseMatrix filled = mask::fill(observed, x_old);
    linalg::SvdFactorization f;
    try {
      f = linalg::svd_partial(filled, lambda, config.target_rank + 1, config.svd_backend);
    } catch (const linalg::SvdError&) {
      result.termination = Termination::NumericalFailure;
      break;
    }
    DenseMatrix x_new = linalg::soft_threshold(f, lambda);
    const double stat = convergence_statistic(x_new, x_old);

    result.iterations.push_back(IterationRecord{iter, lambda, sigma_at(f, config.target_rank),
                                                stat, thresholded_rank(f, lambda)});
    if (!all_finite(x_new) || std::isnan(stat)) {
      result.termination = Termination::NumericalFailure;
      break;
    }
    result.completed = x_new;
    if (stat < config.epsilon) {
      result.termination = Termination::Converged;
      break;
    }
    x_old = std::move(x_new);
  }

  result.wall_time_seconds = seconds_since(start);
  return result;
}

SolverResult fixed_rank_soft_impute(const mask::ObservedMatrix& observed,
                                    const SolverConfig& config) {
  check_observed(observed);
  check_config(observed, config, /*adaptive=*/true);

  const auto start = Clock::now();
  const Index n = observed.mask.n();
  const Index r = config.target_rank;

  SolverResult result;
  result.termination = Termination::MaxIterations;
  DenseMatrix x_old = DenseMatrix::Zero(n, n);
  result.completed = x_old;

  double lambda = config.lambda0 ? *config.lambda0 : default_lambda0(observed, config);

  for (Index iter = 1; iter <= config.max_iterations; ++iter) {
    const DenseMatrix filled = mask::fill(observed, x_old);
    linalg::SvdFactorization f;
    try {
      f = linalg::svd_partial(filled, lambda, r + 1, config.svd_backend);
    } catch (const linalg::SvdError&) {
      result.termination = Termination::NumericalFailure;
      break;
    }
    DenseMatrix x_new = linalg::soft_threshold(f, lambda);
    const double stat = convergence_statistic(x_new, x_old);
    const Index rank = thresholded_rank(f, lambda);
    const double sigma_r1 = sigma_at(f, r);

    result.iterations.push_back(IterationRecord{iter, lambda, sigma_r1, stat, rank});
    if (!all_finite(x_new) || std::isnan(stat)) {
      result.termination = Termination::NumericalFailure;
      break;
    }
    result.completed = x_new;
    if (stat < config.epsilon) {
      result.termination = Termination::Converged;
      break;
    }

    // Adaptive update, reusing the factorization this iteration computed.
    const double next_lambda = config.beta * sigma_r1;
    // The shrinkage level has hit numeric zero while the iterate is already
    // at or below the target rank and the tolerance is still unmet: the
    // adaptive rule has degenerated and further iterations cannot make
    // progress.
    if (std::isfinite(stat) && rank <= r &&
        next_lambda <= std::numeric_limits<double>::epsilon() * f.sigma[0]) {
      result.termination = Termination::RankCollapse;
      break;
    }
    x_old = std::move(x_new);
    lambda = next_lambda;
  }

  result.wall_time_seconds = seconds_since(start);
  return result;
}

}  // namespace edmc::solver
