// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edmc/linalg.hpp"
#include "edmc/mask.hpp"
#include "edmc/types.hpp"

namespace edmc::solver {

struct SolverConfig {
  // Shrinkage factor for the adaptive regularizer lambda = beta * sigma_{r+1};
  // must lie strictly inside (0, 1).
  double beta = 0.8;
  // Known rank r of the matrix to recover (k + 2 for a distance matrix of
  // points in R^k). Must be < n for fixed_rank_soft_impute.
  Index target_rank = 1;
  // Convergence tolerance on ||X_new - X_old||_F / ||X_old||_F.
  double epsilon = 1e-8;
  Index max_iterations = 1000;
  // Initial lambda; when absent, default_lambda0() is used.
  std::optional<double> lambda0;
  // Regularizer sequence for soft_impute (required there, ignored by
  // fixed_rank_soft_impute). Strictly decreasing, non-negative.
  std::optional<std::vector<double>> lambda_schedule;
  linalg::SvdBackend svd_backend = linalg::SvdBackend::Auto;
};

struct IterationRecord {
  Index index;             // 1-based
  double lambda;           // shrinkage level used this iteration
  double sigma_r_plus_1;   // (r+1)-th singular value of the filled matrix
  double relative_change;  // convergence statistic (+inf on the first iteration)
  Index iterate_rank;      // numeric rank of the thresholded iterate

  bool operator==(const IterationRecord&) const = default;
};

enum class Termination { Converged, MaxIterations, RankCollapse, NumericalFailure };

const char* to_string(Termination t);
Termination termination_from_string(const std::string& name);

struct SolverResult {
  DenseMatrix completed;
  std::vector<IterationRecord> iterations;
  Termination termination = Termination::MaxIterations;
  double wall_time_seconds = 0.0;

  bool converged() const { return termination == Termination::Converged; }
};

/// ||x_new - x_old||_F / ||x_old||_F. Returns +infinity when
/// ||x_old||_F = 0, so a run never terminates on its first iteration.
double convergence_statistic(const DenseMatrix& x_new, const DenseMatrix& x_old);

/// Default initial regularizer beta * sigma_{r+1}(P_Omega(D)), i.e. the
/// adaptive rule applied to the zero-filled observed matrix.
double default_lambda0(const mask::ObservedMatrix& observed, const SolverConfig& config);

/// Geometric schedule lambda_i = sigma_1(P_Omega(D)) * decay^i, i = 1..length.
/// The documented default schedule for soft_impute baselines.
std::vector<double> geometric_lambda_schedule(const mask::ObservedMatrix& observed,
                                              Index length, double decay = 0.9);

/// Baseline completion: one soft-thresholding step per schedule entry.
///
/// X_old = 0; for each lambda_i the iterate is rebuilt as
/// S_{lambda_i}(P_Omega(D) + P_Omega-perp(X_old)) until the relative change
/// drops below epsilon or the schedule is exhausted.
SolverResult soft_impute(const mask::ObservedMatrix& observed, const SolverConfig& config);

/// Rank-aware completion with the adaptive regularizer.
///
/// Same iteration as soft_impute, but after each thresholding step lambda is
/// reset to beta * sigma_{r+1} of the filled matrix, read from the SVD that
/// the step already computed. Reports RankCollapse when the iterate's
/// numeric rank has fallen to <= r with lambda at numeric zero while the
/// tolerance is still unmet (retry with a smaller beta in that case).
SolverResult fixed_rank_soft_impute(const mask::ObservedMatrix& observed,
                                    const SolverConfig& config);

}  // namespace edmc::solver
