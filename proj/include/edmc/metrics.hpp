// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "edmc/mask.hpp"
#include "edmc/types.hpp"

namespace edmc::metrics {

struct ErrorReport {
  double relative_error = 0.0;
  double max_error = 0.0;
  double masked_only_max_error = 0.0;  // over positions missing from the mask

  bool operator==(const ErrorReport&) const = default;
};

/// ||d - d_hat||_F^2 / ||d||_F^2. Throws std::invalid_argument when d is the
/// zero matrix (the metric is undefined there).
double relative_error(const DenseMatrix& d, const DenseMatrix& d_hat);

/// max |d_ij - d_hat_ij| over all entries.
double max_error(const DenseMatrix& d, const DenseMatrix& d_hat);

/// max |d_ij - d_hat_ij| over positions NOT in `observed`; 0 if none.
double max_error_missing(const DenseMatrix& d, const DenseMatrix& d_hat,
                         const mask::ObservationMask& observed);

/// All three metrics against retained ground truth.
ErrorReport compare(const DenseMatrix& d, const DenseMatrix& d_hat,
                    const mask::ObservationMask& observed);

}  // namespace edmc::metrics
