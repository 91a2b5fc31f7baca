// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace edmc {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// True iff every entry of `a` is finite (no NaN, no Inf).
bool all_finite(const DenseMatrix& a);

/// True iff `a` is square and a(i,j) == a(j,i) bitwise for all i, j.
bool is_exactly_symmetric(const DenseMatrix& a);

}  // namespace edmc
