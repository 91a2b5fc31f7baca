// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "edmc/types.hpp"

namespace edmc::linalg {

// A singular value sigma_i counts as numerically nonzero iff
// sigma_i > kRankRelTol * sigma_1.
inline constexpr double kRankRelTol = 1e-10;

/// Thrown when the factorization kernel fails to converge.
class SvdError : public std::runtime_error {
 public:
  SvdError(Index rows, Index cols, int info);
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  Index rows_;
  Index cols_;
};

/// Result of a singular value decomposition A = U * diag(sigma) * V^T.
///
/// U is rows x q and V is cols x q with orthonormal columns; sigma holds q
/// non-negative values in non-increasing order. The full decomposition has
/// q = min(rows, cols); a truncated provider may return fewer columns, in
/// which case every omitted singular value is <= sigma[q-1].
struct SvdFactorization {
  DenseMatrix u;
  Vector sigma;
  DenseMatrix v;

  Index value_count() const { return sigma.size(); }
};

/// Which kernel backs the factorization.
///
/// Dense is the reference path (LAPACK, all singular values). Truncated uses
/// a randomized projection that computes only the leading part of the
/// spectrum and is intended for large matrices whose iterates are low-rank.
/// Auto picks Dense for small inputs and Truncated above a size threshold.
enum class SvdBackend { Auto, Dense, Truncated };

const char* to_string(SvdBackend backend);
SvdBackend svd_backend_from_string(const std::string& name);

/// Full SVD of `a` with all min(rows, cols) singular values.
/// Dense kernel only. Throws SvdError if the kernel does not converge.
SvdFactorization svd(const DenseMatrix& a);

/// Factorization sufficient for soft-thresholding at level `lambda`:
/// every singular value > max(lambda, kRankRelTol * sigma_1) is present, and
/// at least min(min_values, min(rows, cols)) values are present regardless.
/// `lambda` may be +infinity to request only the leading min_values values.
SvdFactorization svd_partial(const DenseMatrix& a, double lambda, Index min_values,
                             SvdBackend backend = SvdBackend::Auto);

/// Singular value soft-thresholding S_lambda: every sigma_i is replaced by
/// max(sigma_i - lambda, 0) and the matrix is rebuilt from the surviving
/// components. Requires lambda >= 0.
DenseMatrix soft_threshold(const DenseMatrix& a, double lambda);

/// Same, reusing an existing factorization of the input.
DenseMatrix soft_threshold(const SvdFactorization& f, double lambda);

/// sqrt of the sum of squared entries.
double frobenius_norm(const DenseMatrix& a);

/// Sum of all singular values.
double nuclear_norm(const DenseMatrix& a);

/// Number of singular values above kRankRelTol * sigma_1.
Index numeric_rank(const DenseMatrix& a);
Index numeric_rank(const SvdFactorization& f);

}  // namespace edmc::linalg
