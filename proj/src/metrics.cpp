// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace edmc::metrics {

namespace {

void check_shapes(const DenseMatrix& d, const DenseMatrix& d_hat, const char* op) {
  if (d.rows() != d_hat.rows() || d.cols() != d_hat.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

double relative_error(const DenseMatrix& d, const DenseMatrix& d_hat) {
  check_shapes(d, d_hat, "relative_error");
  const double denom = d.squaredNorm();
  if (denom == 0.0)
    throw std::invalid_argument("relative_error: reference matrix is zero");
  return (d - d_hat).squaredNorm() / denom;
}

double max_error(const DenseMatrix& d, const DenseMatrix& d_hat) {
  check_shapes(d, d_hat, "max_error");
  return (d - d_hat).cwiseAbs().maxCoeff();
}

double max_error_missing(const DenseMatrix& d, const DenseMatrix& d_hat,
                         const mask::ObservationMask& observed) {
  check_shapes(d, d_hat, "max_error_missing");
  if (d.rows() != observed.n())
    throw std::invalid_argument("max_error_missing: mask size mismatch");
  double worst = 0.0;
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j)
      if (!observed.contains(i, j)) worst = std::max(worst, std::abs(d(i, j) - d_hat(i, j)));
  return worst;
}

ErrorReport compare(const DenseMatrix& d, const DenseMatrix& d_hat,
                    const mask::ObservationMask& observed) {
  ErrorReport report;
  report.relative_error = relative_error(d, d_hat);
  report.max_error = max_error(d, d_hat);
  report.masked_only_max_error = max_error_missing(d, d_hat, observed);
  return report;
}

}  // namespace edmc::metrics
