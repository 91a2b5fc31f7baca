// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edmc/mask.hpp"
#include "edmc/metrics.hpp"
#include "edmc/solver.hpp"
#include "edmc/types.hpp"

namespace edmc::io {

inline constexpr int kReportFormatVersion = 1;

/// File-level failure (open, read, write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed content; the message names the offending location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- dense matrix CSV -------------------------------------------------------
//
// One row per line, comma-separated, 17 significant digits (round-trip exact
// for IEEE doubles). The reader rejects ragged rows.

void write_dense(const std::filesystem::path& path, const DenseMatrix& matrix);
DenseMatrix read_dense(const std::filesystem::path& path);

// --- observed-entry list -----------------------------------------------------
//
// Header line "n <n>" followed by one "i j value" triple per observed entry,
// whitespace-separated, 0-based indices. Order-insensitive; duplicate or
// out-of-range positions are parse errors.

void write_observed(const std::filesystem::path& path, const mask::ObservedMatrix& observed);
mask::ObservedMatrix read_observed(const std::filesystem::path& path);

// --- run report --------------------------------------------------------------

struct GeneratorParams {
  std::string family;  // "edm_points" or "gaussian_lowrank"
  Index n = 0;
  Index dimension_or_rank = 0;
  std::string distribution;  // "uniform_unit_cube" or "gaussian"
  std::uint64_t seed = 0;

  bool operator==(const GeneratorParams&) const = default;
};

struct MaskParams {
  double deletion_fraction = 0.0;
  std::string mode;
  bool keep_diagonal = true;
  std::uint64_t seed = 0;

  bool operator==(const MaskParams&) const = default;
};

struct SolverParams {
  std::string algorithm;  // "fixed_rank_soft_impute" or "soft_impute"
  double beta = 0.8;
  double epsilon = 1e-8;
  std::optional<double> lambda0;
  Index max_iterations = 1000;
  Index target_rank = 1;
  std::string svd_backend = "auto";

  bool operator==(const SolverParams&) const = default;
};

struct RunOutcome {
  std::string termination;
  Index iteration_count = 0;
  double wall_time_seconds = 0.0;
  std::optional<metrics::ErrorReport> errors;

  bool operator==(const RunOutcome&) const = default;
};

/// Serializable record of one experiment run (JSON on disk).
struct RunReport {
  int format_version = kReportFormatVersion;
  std::string rng_name;
  std::optional<GeneratorParams> generator;
  std::optional<MaskParams> mask;
  SolverParams solver;
  RunOutcome outcome;
  std::optional<std::vector<solver::IterationRecord>> trace;

  bool operator==(const RunReport&) const = default;
};

void write_report(const std::filesystem::path& path, const RunReport& report);
RunReport read_report(const std::filesystem::path& path);

/// Per-iteration trace as plot-ready CSV with header
/// "iteration,lambda,sigma_r_plus_1,relative_change,rank".
void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<solver::IterationRecord>& trace);

}  // namespace edmc::io
